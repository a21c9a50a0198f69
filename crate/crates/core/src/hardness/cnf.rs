use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn positive(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn negative(var: usize) -> Self {
        Literal { var, positive: false }
    }

    /// DIMACS-style signed index.
    pub fn from_signed(x: i64) -> Result<Self> {
        if x == 0 {
            return Err(Error::InvalidCnf("literal 0".into()));
        }
        Ok(Literal {
            var: x.unsigned_abs() as usize,
            positive: x > 0,
        })
    }

    pub fn to_signed(self) -> i64 {
        let v = self.var as i64;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn holds(self, assignment: &[bool]) -> bool {
        assignment[self.var - 1] == self.positive
    }
}

/// A 3-CNF formula. Shorter clauses are padded by repeating a literal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        let f = CnfFormula { num_vars, clauses };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_vars == 0 {
            return Err(Error::InvalidCnf("no variables".into()));
        }
        for (k, clause) in self.clauses.iter().enumerate() {
            for lit in clause {
                if lit.var == 0 || lit.var > self.num_vars {
                    return Err(Error::InvalidCnf(format!(
                        "clause {k} uses variable {} outside 1..={}",
                        lit.var, self.num_vars
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.holds(assignment)))
    }
}
