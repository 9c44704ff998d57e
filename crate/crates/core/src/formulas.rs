//! Closed-form Betti numbers, projective dimension and regularity of
//! expansions, read off a minimal resolution of the unexpanded module.

use num_integer::binomial;

use crate::betti::GradedBetti;
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::expansion::ExpansionTuple;
use crate::field::Field;
use crate::monomial::Monomial;

/// Coefficients of `P_j(t) = Σ_{i < r} C(r + a - 1, r - i - 1) C(a + i - 1, i) t^i`,
/// the Betti polynomial of `P^a` for a prime on `r` variables.
pub fn prime_power_polynomial(r: usize, a: u32) -> Vec<usize> {
    let a = a as usize;
    if a == 0 {
        return vec![1];
    }
    (0..r)
        .map(|i| binomial(r + a - 1, r - i - 1) * binomial(a + i - 1, i))
        .collect()
}

fn poly_mul(p: &[usize], q: &[usize]) -> Vec<usize> {
    let mut out = vec![0; p.len() + q.len() - 1];
    for (i, x) in p.iter().enumerate() {
        for (j, y) in q.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Betti polynomial of `(x^a)*`: the product of the block polynomials over
/// `supp(a)`.
pub fn betti_principal(a: &Monomial, tuple: &ExpansionTuple) -> Vec<usize> {
    a.support()
        .into_iter()
        .fold(vec![1], |acc, j| poly_mul(&acc, &prime_power_polynomial(tuple.entry(j), a.exponent(j))))
}

/// `projdim (x^a)* = Σ_{j ∈ supp(a)} (i_j - 1)`.
pub fn projdim_principal(a: &Monomial, tuple: &ExpansionTuple) -> usize {
    a.support().into_iter().map(|j| tuple.entry(j) - 1).sum()
}

fn check<F: Field>(resolution: &ChainComplex<F>, tuple: &ExpansionTuple) -> Result<()> {
    if !resolution.is_minimal() {
        return Err(Error::NotMinimal("formulas need a minimal resolution".into()));
    }
    if resolution.ring().nvars() != tuple.len() {
        return Err(Error::InvalidTuple("tuple length differs from the ring".into()));
    }
    Ok(())
}

/// `β_{jk}(M*) = Σ_i β_{j-i,k}(F_i*)`, each `(x^a)*` contributing its Betti
/// polynomial in degrees `|a| + s` since its resolution is `|a|`-linear.
pub fn betti_via_formula<F: Field>(resolution: &ChainComplex<F>, tuple: &ExpansionTuple) -> Result<GradedBetti> {
    check(resolution, tuple)?;
    let mut g = GradedBetti::default();
    for (i, m) in resolution.modules().iter().enumerate() {
        for a in m.shifts() {
            for (s, c) in betti_principal(a, tuple).into_iter().enumerate() {
                g.add(i + s, a.total_degree() + s as u64, c);
            }
        }
    }
    Ok(g)
}

/// `(projdim M*, reg M*)` with `projdim M* = max_{i,j} (i + Σ_{k ∈ supp(a_{ij})} (i_k - 1))`
/// and `reg M* = reg M = max (|a_{ij}| - i)`.
pub fn projdim_and_reg<F: Field>(resolution: &ChainComplex<F>, tuple: &ExpansionTuple) -> Result<(usize, i64)> {
    check(resolution, tuple)?;
    let shifts = all_shifts(resolution);
    if shifts.is_empty() {
        return Err(Error::ZeroIdeal);
    }
    let pd = projdim_over(&shifts, tuple);
    let reg = shifts
        .iter()
        .map(|(i, a)| a.total_degree() as i64 - *i as i64)
        .max()
        .unwrap();
    Ok((pd, reg))
}

/// The same projective dimension maximum restricted to `shifts`.
pub fn projdim_over(shifts: &[(usize, Monomial)], tuple: &ExpansionTuple) -> usize {
    shifts
        .iter()
        .map(|(i, a)| i + projdim_principal(a, tuple))
        .max()
        .unwrap_or(0)
}

fn all_shifts<F: Field>(resolution: &ChainComplex<F>) -> Vec<(usize, Monomial)> {
    resolution
        .modules()
        .iter()
        .enumerate()
        .flat_map(|(i, m)| m.shifts().iter().map(move |a| (i, a.clone())))
        .collect()
}

/// Shifts `a_{ij}` dividing no shift in a higher homological degree.
pub fn extremal_shifts<F: Field>(resolution: &ChainComplex<F>) -> Vec<(usize, Monomial)> {
    let shifts = all_shifts(resolution);
    shifts
        .iter()
        .filter(|(i, a)| !shifts.iter().any(|(k, b)| k > i && a.divides(b)))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{minimize, taylor_complex};
    use crate::ideal::MonomialIdeal;
    use crate::monomial::RingDescriptor;
    use crate::Q;

    fn ideal(n: usize, gens: &[&str]) -> MonomialIdeal {
        let r = RingDescriptor::standard(n);
        MonomialIdeal::new(r.clone(), gens.iter().map(|g| r.parse_monomial(g).unwrap())).unwrap()
    }

    fn fmin(i: &MonomialIdeal) -> ChainComplex<Q> {
        minimize(&taylor_complex(i).unwrap()).unwrap()
    }

    fn t(v: &[usize]) -> ExpansionTuple {
        ExpansionTuple::new(v.to_vec()).unwrap()
    }

    #[test]
    fn principal_polynomials() {
        let r = RingDescriptor::standard(3);
        let tup = t(&[1, 3, 2]);
        assert_eq!(betti_principal(&r.parse_monomial("x3^2").unwrap(), &tup), vec![3, 2]);
        assert_eq!(betti_principal(&r.parse_monomial("x1*x2").unwrap(), &tup), vec![3, 3, 1]);
        assert_eq!(betti_principal(&r.parse_monomial("x1").unwrap(), &tup), vec![1]);
        assert_eq!(prime_power_polynomial(3, 2), vec![6, 8, 3]);
        assert_eq!(projdim_principal(&r.parse_monomial("x1*x2*x3").unwrap(), &tup), 3);
    }

    #[test]
    fn worked_example_formula() {
        let i = ideal(3, &["x1*x2", "x3^2"]);
        let f = fmin(&i);
        let tup = t(&[1, 3, 2]);
        let g = betti_via_formula(&f, &tup).unwrap();
        assert_eq!(g.betti_numbers(), vec![6, 14, 16, 9, 2]);
        assert_eq!(projdim_and_reg(&f, &tup).unwrap(), (4, 3));
    }

    #[test]
    fn identity_tuple_changes_nothing() {
        let i = ideal(3, &["x1*x2", "x1*x3", "x2*x3"]);
        let f = fmin(&i);
        let ones = ExpansionTuple::ones(3);
        assert_eq!(betti_via_formula(&f, &ones).unwrap(), f.betti_table().graded());
        assert_eq!(projdim_and_reg(&f, &ones).unwrap().0, f.length());
    }

    #[test]
    fn principal_reduces_to_polynomial() {
        let i = ideal(2, &["x1^2*x2"]);
        let tup = t(&[3, 2]);
        let g = betti_via_formula(&fmin(&i), &tup).unwrap();
        assert_eq!(g.betti_numbers(), betti_principal(&i.gens()[0], &tup));
    }

    #[test]
    fn extremal_shift_example() {
        let i = ideal(6, &["x1*x4*x6", "x2*x4*x6", "x3*x4*x5", "x3*x4*x6"]);
        let f = fmin(&i);
        assert_eq!(f.ranks(), vec![4, 4, 1]);
        let ext = extremal_shifts(&f);
        let target = Monomial::new(vec![0, 0, 1, 1, 1, 1]);
        assert!(ext.contains(&(1, target)));
        assert!(ext.iter().all(|(i, _)| *i >= 1));
        let tup = t(&[2, 3, 1, 2, 2, 3]);
        assert_eq!(projdim_over(&ext, &tup), projdim_and_reg(&f, &tup).unwrap().0);
    }

    #[test]
    fn extremal_trivial_cases() {
        let i = ideal(2, &["x1*x2"]);
        let f = fmin(&i);
        assert_eq!(extremal_shifts(&f).len(), 1);
        let i = ideal(3, &["x1*x2", "x1*x3", "x2*x3"]);
        let f = fmin(&i);
        let ext = extremal_shifts(&f);
        for a in f.module(f.length()).unwrap().shifts() {
            assert!(ext.contains(&(f.length(), a.clone())));
        }
    }

    #[test]
    fn rejects_non_minimal() {
        let i = ideal(3, &["x1*x2", "x1*x3", "x2*x3"]);
        let tay = taylor_complex::<Q>(&i).unwrap();
        assert!(betti_via_formula(&tay, &ExpansionTuple::ones(3)).is_err());
    }
}
