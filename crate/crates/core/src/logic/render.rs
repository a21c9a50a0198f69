use alloc::string::String;
use core::fmt::{self, Write};

use super::Formula;

/// Concrete syntax accepted by `parse`. Binary connectives are always
/// parenthesized; quantifiers are parenthesized when used as an operand.
pub fn render(f: &Formula) -> String {
    let mut s = String::new();
    write_formula(&mut s, f).expect("writing to a String cannot fail");
    s
}

fn write_operand<W: Write>(out: &mut W, f: &Formula) -> fmt::Result {
    if f.is_quantifier() {
        out.write_char('(')?;
        write_formula(out, f)?;
        out.write_char(')')
    } else {
        write_formula(out, f)
    }
}

pub(crate) fn write_formula<W: Write>(out: &mut W, f: &Formula) -> fmt::Result {
    match f {
        Formula::True => out.write_str("true"),
        Formula::False => out.write_str("false"),
        Formula::Edge(a, b) => write!(out, "E({a}, {b})"),
        Formula::Arc(a, b) => write!(out, "D({a}, {b})"),
        Formula::Eq(a, b) => write!(out, "{a} = {b}"),
        Formula::InColor(a, c) => write!(out, "{a} in {c}"),
        Formula::InSet(a, s) => write!(out, "{a} in {s}"),
        Formula::Not(a) => {
            out.write_char('!')?;
            write_operand(out, a)
        }
        Formula::And(a, b) => binary(out, a, "&", b),
        Formula::Or(a, b) => binary(out, a, "|", b),
        Formula::Implies(a, b) => binary(out, a, "->", b),
        Formula::Iff(a, b) => binary(out, a, "<->", b),
        Formula::ExistsV(x, b) => quantified(out, "exists", x, b),
        Formula::ForallV(x, b) => quantified(out, "forall", x, b),
        Formula::ExistsS(x, b) => quantified(out, "existsS", x, b),
        Formula::ForallS(x, b) => quantified(out, "forallS", x, b),
    }
}

fn binary<W: Write>(out: &mut W, a: &Formula, op: &str, b: &Formula) -> fmt::Result {
    out.write_char('(')?;
    write_operand(out, a)?;
    write!(out, " {op} ")?;
    write_operand(out, b)?;
    out.write_char(')')
}

fn quantified<W: Write>(out: &mut W, kw: &str, x: &str, body: &Formula) -> fmt::Result {
    write!(out, "{kw} {x}. ")?;
    write_formula(out, body)
}
