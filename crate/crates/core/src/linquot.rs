//! Linear quotients, `set(u)`, and decomposition functions.

use crate::error::{Error, Result};
use crate::expansion::ExpandedRing;
use crate::ideal::{MonomialIdeal, VarSet};
use crate::monomial::{canonical_cmp, Monomial, RingDescriptor};

/// Largest generating set [`find_linear_quotients_order`] will search by
/// default.
pub const DEFAULT_SEARCH_CAP: usize = 8;

/// An ordering `u_1, ..., u_m` of `G(I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedGenerators {
    ring: RingDescriptor,
    order: Vec<Monomial>,
}

/// An ordering with linear quotients together with `set(u_j)`, the
/// variables generating `(u_1, ..., u_{j-1}) : u_j` (empty for `j = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearQuotients {
    pub order: Vec<Monomial>,
    pub sets: Vec<VarSet>,
}

impl OrderedGenerators {
    /// `order` must list `G(I)` exactly once each.
    pub fn new(ideal: &MonomialIdeal, order: Vec<Monomial>) -> Result<Self> {
        let mut sorted = order.clone();
        sorted.sort_by(canonical_cmp);
        if sorted != ideal.gens() {
            return Err(Error::InvalidArgument("ordering is not a permutation of G(I)".into()));
        }
        Ok(Self {
            ring: ideal.ring().clone(),
            order,
        })
    }

    /// Trusts the caller that `order` is a minimal generating set.
    pub(crate) fn from_order(ring: RingDescriptor, order: Vec<Monomial>) -> Self {
        Self { ring, order }
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn order(&self) -> &[Monomial] {
        &self.order
    }

    /// `(u_1, ..., u_{j-1}) : u_j`, 0-based `j`.
    pub fn colon_of_prefix(&self, j: usize) -> MonomialIdeal {
        let prefix = MonomialIdeal::from_unchecked(self.ring.clone(), self.order[..j].to_vec());
        prefix
            .colon_monomial(&self.order[j])
            .expect("same ring by construction")
    }

    /// `Some(sets)` iff every colon ideal is generated by variables.
    pub fn linear_quotients(&self) -> Option<LinearQuotients> {
        let mut sets = Vec::with_capacity(self.order.len());
        for j in 0..self.order.len() {
            sets.push(variable_set(&self.colon_of_prefix(j))?);
        }
        Some(LinearQuotients {
            order: self.order.clone(),
            sets,
        })
    }

    pub fn is_linear_quotients(&self) -> bool {
        self.linear_quotients().is_some()
    }
}

// The variables generating `J`, or None if `J` needs a nonlinear generator.
// The zero ideal (first colon) counts as generated by the empty set.
fn variable_set(j: &MonomialIdeal) -> Option<VarSet> {
    j.gens()
        .iter()
        .map(|g| (g.total_degree() == 1).then(|| g.support()[0]))
        .collect()
}

/// Backtracking search for an ordering with linear quotients. Candidates are
/// tried in canonical order (degree first), so degree-nondecreasing orders
/// are found first.
pub fn find_linear_quotients_order(ideal: &MonomialIdeal, cap: usize) -> Result<Option<LinearQuotients>> {
    let gens = ideal.gens();
    if gens.len() > cap {
        return Err(Error::CapExceeded {
            what: "generators for linear-quotients search".into(),
            got: gens.len(),
            cap,
        });
    }
    let mut used = vec![false; gens.len()];
    let mut order = Vec::with_capacity(gens.len());
    let mut sets = Vec::with_capacity(gens.len());
    if search(ideal.ring(), gens, &mut used, &mut order, &mut sets) {
        Ok(Some(LinearQuotients { order, sets }))
    } else {
        Ok(None)
    }
}

fn search(
    ring: &RingDescriptor,
    gens: &[Monomial],
    used: &mut [bool],
    order: &mut Vec<Monomial>,
    sets: &mut Vec<VarSet>,
) -> bool {
    if order.len() == gens.len() {
        return true;
    }
    for k in 0..gens.len() {
        if used[k] {
            continue;
        }
        let prefix = MonomialIdeal::from_unchecked(ring.clone(), order.clone());
        let colon = prefix.colon_monomial(&gens[k]).expect("same ring");
        let Some(set) = variable_set(&colon) else { continue };
        used[k] = true;
        order.push(gens[k].clone());
        sets.push(set);
        if search(ring, gens, used, order, sets) {
            return true;
        }
        used[k] = false;
        order.pop();
        sets.pop();
    }
    false
}

/// The ordering of `G(I*)` obtained from an ordering of `G(I)` with linear
/// quotients: the expansion of each `u_i` in turn, each block listed in
/// ascending lex for `x_{1,1} > ... > x_{n,i_n}`. The result is checked to
/// have linear quotients.
pub fn expansion_order(ring: &ExpandedRing, order: &OrderedGenerators) -> Result<LinearQuotients> {
    if *order.ring() != *ring.source() {
        return Err(Error::RingMismatch("ordering is not over the source ring".into()));
    }
    if !order.is_linear_quotients() {
        return Err(Error::NotLinearQuotients("input ordering".into()));
    }
    let mut out = Vec::new();
    for u in order.order() {
        let mut block = ring.expand_principal(u).gens().to_vec();
        block.sort_by(|a, b| a.lex_cmp_natural(b));
        out.extend(block);
    }
    OrderedGenerators::from_order(ring.flat().clone(), out)
        .linear_quotients()
        .ok_or_else(|| Error::NotLinearQuotients("expanded ordering".into()))
}

/// `g(u)`: the first generator in the ordering dividing `u`, with
/// complementary factor `c(u) = u / g(u)`.
#[derive(Clone, Debug)]
pub struct DecompositionFunction<'a> {
    order: &'a [Monomial],
}

impl<'a> DecompositionFunction<'a> {
    pub fn new(order: &'a [Monomial]) -> Self {
        Self { order }
    }

    /// Position of `g(u)` in the ordering.
    pub fn index(&self, u: &Monomial) -> Result<usize> {
        self.order
            .iter()
            .position(|g| g.divides(u))
            .ok_or_else(|| Error::NotInIdeal(format!("{:?}", u.exponents())))
    }

    pub fn g(&self, u: &Monomial) -> Result<&'a Monomial> {
        Ok(&self.order[self.index(u)?])
    }

    pub fn c(&self, u: &Monomial) -> Result<Monomial> {
        Ok(u.div(self.g(u)?))
    }
}

/// Whether `set(g(x_s u)) ⊆ set(u)` for all `u ∈ G(I)` and `s ∈ set(u)`;
/// on failure returns the offending `(u, s)`.
pub fn regularity_violation(lq: &LinearQuotients) -> Option<(Monomial, usize)> {
    let g = DecompositionFunction::new(&lq.order);
    let nvars = lq.order.first()?.nvars();
    for (j, u) in lq.order.iter().enumerate() {
        for &s in &lq.sets[j] {
            let xsu = u.mul(&Monomial::var(nvars, s));
            let k = g.index(&xsu).expect("x_s u lies in I");
            if !lq.sets[k].is_subset(&lq.sets[j]) {
                return Some((u.clone(), s));
            }
        }
    }
    None
}

pub fn is_regular_decomposition(lq: &LinearQuotients) -> bool {
    regularity_violation(lq).is_none()
}
