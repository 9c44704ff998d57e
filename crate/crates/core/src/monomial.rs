//! Exponent-vector arithmetic over a named polynomial ring.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

/// The variables of a polynomial ring `K[x1, ..., xn]`, by name.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    names: Arc<[String]>,
}

impl RingDescriptor {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !is_identifier(name) {
                return Err(Error::InvalidRing(format!("'{name}' is not a valid variable name")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable '{name}'")));
            }
        }
        Ok(Self { names: names.into() })
    }

    /// `x1, ..., xn`.
    pub fn standard(n: usize) -> Self {
        Self::new((1..=n).map(|i| format!("x{i}"))).expect("standard names are valid")
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn var(&self, i: usize) -> Monomial {
        Monomial::var(self.nvars(), i)
    }

    /// Checks that `m` lives in this ring.
    pub fn check(&self, m: &Monomial) -> Result<()> {
        if m.nvars() != self.nvars() {
            return Err(Error::RingMismatch(format!(
                "monomial has {} exponents, ring has {} variables",
                m.nvars(),
                self.nvars()
            )));
        }
        Ok(())
    }

    /// Parses `factor ('*' factor)*` with `factor := name ('^' posint)?`, or `1`.
    pub fn parse_monomial(&self, text: &str) -> Result<Monomial, ParseError> {
        self.parse_monomial_at(text, 1, 1)
    }

    /// Like [`parse_monomial`](Self::parse_monomial) but reports positions
    /// relative to `(line, column)` of the text's first character.
    pub fn parse_monomial_at(
        &self,
        text: &str,
        line: usize,
        column: usize,
    ) -> Result<Monomial, ParseError> {
        let err = |offset: usize, msg: String| ParseError::new(line, column + offset, msg);
        let trimmed = text.trim();
        let lead = text.len() - text.trim_start().len();
        if trimmed.is_empty() {
            return Err(err(0, "expected a monomial".into()));
        }
        if trimmed == "1" {
            return Ok(self.one());
        }
        let mut exps = vec![0u32; self.nvars()];
        let mut offset = lead;
        for factor in trimmed.split('*') {
            let fl = factor.len() - factor.trim_start().len();
            let f = factor.trim();
            let at = offset + fl;
            if f.is_empty() {
                return Err(err(at, "empty factor".into()));
            }
            let (name, power) = match f.split_once('^') {
                Some((name, p)) => {
                    let name = name.trim();
                    let p = p.trim();
                    let value: u32 = p
                        .parse()
                        .ok()
                        .filter(|v| *v > 0)
                        .ok_or_else(|| err(at + f.find('^').unwrap() + 1, format!("'{p}' is not a positive integer exponent")))?;
                    (name, value)
                }
                None => (f, 1),
            };
            let idx = self
                .index_of(name)
                .ok_or_else(|| err(at, format!("unknown variable '{name}'")))?;
            exps[idx] += power;
            offset += factor.len() + 1;
        }
        Ok(Monomial::new(exps))
    }

    /// Canonical text form: `x1^2*x3`, exponent 1 omitted, ascending variable index.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        m.exponents()
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| {
                if *e == 1 {
                    self.names[i].clone()
                } else {
                    format!("{}^{}", self.names[i], e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A monomial `x^a`, stored as its exponent vector `a`.
///
/// Binary operations require both operands to have the same number of
/// variables and panic otherwise; use [`RingDescriptor::check`] at API
/// boundaries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Self { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|e| *e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|e| u64::from(*e)).sum()
    }

    /// Indices (0-based) of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    fn same_ring(&self, other: &Monomial) {
        assert_eq!(
            self.exps.len(),
            other.exps.len(),
            "monomials from different rings"
        );
    }

    /// `self | other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.same_ring(other);
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, |a, b| a.max(b))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, |a, b| a.min(b))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, |a, b| a + b)
    }

    /// `self / divisor`, which must be exact.
    pub fn quotient_exact(&self, divisor: &Monomial) -> Result<Monomial> {
        if divisor.nvars() != self.nvars() {
            return Err(Error::RingMismatch("quotient of monomials from different rings".into()));
        }
        if !divisor.divides(self) {
            return Err(Error::NotDivisible {
                divisor: format!("{:?}", divisor.exps),
                dividend: format!("{:?}", self.exps),
            });
        }
        Ok(self.zip_with(divisor, |a, b| a - b))
    }

    /// Exact quotient for callers that have already established divisibility.
    pub(crate) fn div(&self, divisor: &Monomial) -> Monomial {
        debug_assert!(divisor.divides(self));
        self.zip_with(divisor, |a, b| a - b)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial::new(self.exps.iter().map(|e| e * k).collect())
    }

    fn zip_with(&self, other: &Monomial, f: impl Fn(u32, u32) -> u32) -> Monomial {
        self.same_ring(other);
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| f(*a, *b)).collect())
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|e| *e <= 1)
    }

    pub fn squarefree_part(&self) -> Monomial {
        Monomial::new(self.exps.iter().map(|e| u32::from(*e > 0)).collect())
    }

    /// `Some(i)` iff the monomial is `x_i^e` with `e >= 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        match self.support().as_slice() {
            [i] => Some(*i),
            _ => None,
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.same_ring(other);
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Lexicographic comparison; `var_order[0]` is the most significant variable.
    pub fn lex_cmp(&self, other: &Monomial, var_order: &[usize]) -> Ordering {
        self.same_ring(other);
        for &i in var_order {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Lex under `x1 > x2 > ... > xn`.
    pub fn lex_cmp_natural(&self, other: &Monomial) -> Ordering {
        self.same_ring(other);
        self.exps.cmp(&other.exps)
    }
}

/// Standard comparison for canonical generator lists: total degree ascending,
/// then lex (`x1 > ... > xn`) descending.
pub fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.total_degree()
        .cmp(&b.total_degree())
        .then_with(|| b.lex_cmp_natural(a))
}

/// All monomials of total degree `d` in `nvars` variables, in descending lex.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fill_degree(&mut current, 0, d, &mut out);
    out
}

fn fill_degree(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial::new(current.clone()));
        current[pos] = 0;
        return;
    }
    if current.is_empty() {
        if remaining == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill_degree(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

/// All monomials of total degree at most `d`.
pub fn monomials_up_to_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(nvars, k)).collect()
}

/// Displays a monomial through its ring.
pub struct DisplayMonomial<'a>(pub &'a RingDescriptor, pub &'a Monomial);

impl fmt::Display for DisplayMonomial<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.format_monomial(self.1))
    }
}
