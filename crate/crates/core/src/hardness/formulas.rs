use alloc::format;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::logic::{Formula, Term};

/// `tow(0) = 0`, `tow(h + 1) = 2^tow(h)`. Overflows from `h = 6` on.
pub fn tow(h: u32) -> Result<u64> {
    let mut t = 0u64;
    for _ in 0..h {
        t = u32::try_from(t).ok().and_then(|s| 1u64.checked_shl(s)).ok_or(Error::Overflow("tower"))?;
    }
    Ok(t)
}

/// The least `h` with `tow(h) >= n`.
pub fn h_n(n: usize) -> usize {
    (0..6)
        .find(|&h| tow(h).unwrap() >= n as u64)
        .map_or(6, |h| h as usize)
}

/// The bit gadget `N(k)` on vertices `0..=k`: an arc `i -> j` whenever bit `j`
/// of `i` is set.
pub fn gadget_n(k: usize) -> Graph {
    let mut g = Graph::new_directed(k + 1);
    for i in 1..=k {
        for j in (0..usize::BITS as usize).filter(|&j| i >> j & 1 == 1) {
            g.add_edge(i, j).expect("j < i");
        }
    }
    g
}

/// `eq_h(x, y)`: the number encoded by the out-neighbors of `x` in color `c1`
/// equals the one encoded by the out-neighbors of `y` in `c2`, for numbers
/// below `tow(h + 1)`.
///
/// Each level refers to the level below once, so the size is linear in `h`.
/// Bound variables are named `a{h}`, `b{h}`, `w{h}`, `z{h}`, `w{h}'`,
/// `z{h}'`, `u{h}`, `v{h}`; `x` and `y` must not use these names.
pub fn eq_formula(h: usize, x: Term, y: Term, c1: &str, c2: &str) -> Formula {
    if h == 0 {
        return Formula::True;
    }
    let name = |s: &str| format!("{s}{h}");
    let (a, b, w, z, wp, zp, u, v) = (
        name("a"),
        name("b"),
        name("w"),
        name("z"),
        format!("{}'", name("w")),
        format!("{}'", name("z")),
        name("u"),
        name("v"),
    );
    let var = |s: &str| Term::var(s);
    let out_of = |from: &Term, to: &str, color: &str| {
        Formula::and(Formula::arc(from.clone(), var(to)), Formula::in_color(var(to), color))
    };
    let nonempty = Formula::iff(
        Formula::exists(&a, out_of(&x, &a, c1)),
        Formula::exists(&b, out_of(&y, &b, c2)),
    );
    let pairs = Formula::or(
        Formula::and(Formula::eq(var(&u), var(&w)), Formula::eq(var(&v), var(&z))),
        Formula::and(Formula::eq(var(&u), var(&wp)), Formula::eq(var(&v), var(&zp))),
    );
    let shared = Formula::forall(
        &u,
        Formula::forall(&v, Formula::implies(pairs, eq_formula(h - 1, var(&u), var(&v), c1, c2))),
    );
    let back = Formula::forall(
        &zp,
        Formula::implies(
            out_of(&y, &zp, c2),
            Formula::exists(&wp, Formula::and(out_of(&x, &wp, c1), shared)),
        ),
    );
    let forth = Formula::forall(
        &w,
        Formula::implies(
            out_of(&x, &w, c1),
            Formula::exists(&z, Formula::and(out_of(&y, &z, c2), back)),
        ),
    );
    Formula::and(nonempty, forth)
}
