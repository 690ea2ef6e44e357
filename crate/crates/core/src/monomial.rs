//! Exponent-vector monomials over a fixed, ordered variable table and the
//! square-free monomial ideal container.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

pub(crate) type Exps = SmallVec<[u16; 16]>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("monomials live over different variable tables ({left} vs {right} variables)")]
    TableMismatch { left: usize, right: usize },
    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("exponent overflow")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("an ideal needs at least one generator")]
    Empty,
    #[error("generator f{index} is not square-free")]
    NotSquareFree { index: usize },
    #[error("generator f{index} is the unit monomial")]
    UnitGenerator { index: usize },
    #[error("generators f{first} and f{second} are equal")]
    Duplicate { first: usize, second: usize },
    #[error("generator f{divisor} divides f{multiple}: not a minimal generating set")]
    NotMinimal { divisor: usize, multiple: usize },
    #[error("generator f{index} does not match the variable table")]
    TableMismatch { index: usize },
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("generator index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
}

/// Ordered list of distinct variable names. Declaration order is the
/// rendering order of every monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VariableTable {
    names: Vec<String>,
}

impl VariableTable {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, IdealError> {
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref().to_string();
            if out.contains(&name) {
                return Err(IdealError::DuplicateVariable(name));
            }
            out.push(name);
        }
        Ok(VariableTable { names: out })
    }

    /// `x1, ..., x{count}`.
    pub fn numbered(prefix: &str, count: usize) -> Self {
        VariableTable {
            names: (1..=count).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Monomial from a product of variable names (repeats raise the exponent).
    pub fn monomial<S: AsRef<str>>(&self, factors: &[S]) -> Result<Monomial, IdealError> {
        let mut m = Monomial::one(self.len());
        for f in factors {
            let i = self
                .index_of(f.as_ref())
                .ok_or_else(|| IdealError::UnknownVariable(f.as_ref().to_string()))?;
            m.exps[i] += 1;
        }
        Ok(m)
    }
}

/// A monomial stored as a dense exponent vector, one slot per variable of
/// its table. The unit monomial is the all-zero vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub(crate) exps: Exps,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn var(index: usize, nvars: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u16 {
        self.exps[var]
    }

    /// Variables with a nonzero exponent, in table order.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_square_free(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    fn check_table(&self, other: &Monomial) -> Result<(), MonomialError> {
        if self.nvars() != other.nvars() {
            return Err(MonomialError::TableMismatch {
                left: self.nvars(),
                right: other.nvars(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial, MonomialError> {
        self.check_table(other)?;
        let mut exps = self.exps.clone();
        for (e, &o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = e.checked_add(o).ok_or(MonomialError::Overflow)?;
        }
        Ok(Monomial { exps })
    }

    pub fn pow(&self, k: u32) -> Result<Monomial, MonomialError> {
        let mut exps = self.exps.clone();
        for e in exps.iter_mut() {
            let v = (*e as u32).checked_mul(k).ok_or(MonomialError::Overflow)?;
            *e = u16::try_from(v).map_err(|_| MonomialError::Overflow)?;
        }
        Ok(Monomial { exps })
    }

    pub fn gcd(&self, other: &Monomial) -> Result<Monomial, MonomialError> {
        self.check_table(other)?;
        Ok(self.gcd_unchecked(other))
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial, MonomialError> {
        self.check_table(other)?;
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.max(b))
            .collect();
        Ok(Monomial { exps })
    }

    /// `self / divisor`; fails unless `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Monomial) -> Result<Monomial, MonomialError> {
        self.check_table(divisor)?;
        self.try_div(divisor).ok_or_else(|| MonomialError::NotDivisible {
            dividend: format!("{self:?}"),
            divisor: format!("{divisor:?}"),
        })
    }

    /// True iff `self` divides `other` (exponentwise `<=`). Monomials over
    /// different tables never divide each other.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.nvars() == other.nvars() && self.exps.iter().zip(other.exps.iter()).all(|(&a, &b)| a <= b)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    pub(crate) fn gcd_unchecked(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(&a, &b)| a.min(b))
            .collect();
        Monomial { exps }
    }

    pub(crate) fn try_div(&self, divisor: &Monomial) -> Option<Monomial> {
        let mut exps = self.exps.clone();
        for (e, &d) in exps.iter_mut().zip(divisor.exps.iter()) {
            *e = e.checked_sub(d)?;
        }
        Some(Monomial { exps })
    }

    /// `a / b` for a known divisor; panics otherwise.
    pub(crate) fn quo(&self, divisor: &Monomial) -> Monomial {
        self.try_div(divisor).expect("exact division by a non-divisor")
    }

    /// Canonical text in table order, e.g. `x1^2*x3`; the unit renders as `1`.
    pub fn render(&self, vars: &VariableTable) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(vars.name(i).to_string()),
                _ => parts.push(format!("{}^{}", vars.name(i), e)),
            }
        }
        parts.join("*")
    }
}

/// Panics on table mismatch or overflow; for monomials of one ideal.
impl Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        Monomial::mul(self, rhs).expect("monomial product")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "v{}", i + 1)?;
            } else {
                write!(f, "v{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// A square-free monomial ideal given by its minimal generators `f1..fn`.
/// Generator labels are 1-based everywhere in the public API.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFreeIdeal {
    vars: VariableTable,
    gens: Vec<Monomial>,
}

impl SquareFreeIdeal {
    pub fn new(vars: VariableTable, gens: Vec<Monomial>) -> Result<Self, IdealError> {
        if gens.is_empty() {
            return Err(IdealError::Empty);
        }
        for (i, g) in gens.iter().enumerate() {
            if g.nvars() != vars.len() {
                return Err(IdealError::TableMismatch { index: i + 1 });
            }
            if !g.is_square_free() {
                return Err(IdealError::NotSquareFree { index: i + 1 });
            }
            if g.is_one() {
                return Err(IdealError::UnitGenerator { index: i + 1 });
            }
        }
        for i in 0..gens.len() {
            for j in 0..gens.len() {
                if i == j {
                    continue;
                }
                if gens[i] == gens[j] {
                    return Err(IdealError::Duplicate {
                        first: i.min(j) + 1,
                        second: i.max(j) + 1,
                    });
                }
                if gens[i].divides(&gens[j]) {
                    return Err(IdealError::NotMinimal {
                        divisor: i + 1,
                        multiple: j + 1,
                    });
                }
            }
        }
        Ok(SquareFreeIdeal { vars, gens })
    }

    /// Builds an ideal from generators written as lists of variable names.
    pub fn from_names<S: AsRef<str>>(vars: &[S], gens: &[&[S]]) -> Result<Self, IdealError> {
        let table = VariableTable::new(vars)?;
        let gens = gens
            .iter()
            .map(|g| table.monomial(g))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(table, gens)
    }

    pub fn vars(&self) -> &VariableTable {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Number of generators `n`.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    /// Generator `f_index`, 1-based.
    pub fn gen(&self, index: usize) -> &Monomial {
        &self.gens[index - 1]
    }

    pub fn check_index(&self, index: usize) -> Result<(), IdealError> {
        if index == 0 || index > self.len() {
            return Err(IdealError::IndexOutOfRange { index, n: self.len() });
        }
        Ok(())
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn render(&self, m: &Monomial) -> String {
        m.render(&self.vars)
    }
}
