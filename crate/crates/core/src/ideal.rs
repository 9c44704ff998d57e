//! Monomial ideals: canonical generating sets, ideal arithmetic, primary
//! decomposition and the associated-prime machinery built on it.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::{canonical_cmp, Monomial, RingDescriptor};

/// A set of variable indices; stands for the monomial prime it generates.
pub type VarSet = BTreeSet<usize>;

/// A monomial ideal stored by its minimal generating set `G(I)`, sorted by
/// total degree and then descending lex. Two ideals are equal iff their
/// generator lists are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ring: RingDescriptor,
    gens: Vec<Monomial>,
}

/// A primary component together with the prime it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimaryComponent {
    pub component: MonomialIdeal,
    pub radical: VarSet,
}

/// Height data for `S/I`; `dim` is only reported when the associated primes
/// are all minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionInfo {
    pub height: usize,
    pub unmixed: bool,
    pub dim: Option<usize>,
}

/// Outcome of the windowed search for the stable value of `Ass(S/I^s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AssInfinity {
    /// The set was constant on `from..from + window`.
    Stable { primes: BTreeSet<VarSet>, from: u32 },
    /// No window of constancy was found with every power `<= cap`.
    Undetermined { cap: u32 },
}

pub const DEFAULT_ASS_INFINITY_CAP: u32 = 12;

impl MonomialIdeal {
    /// The ideal generated by `monomials`, reduced to its minimal generators.
    pub fn new(ring: RingDescriptor, monomials: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let monomials: Vec<Monomial> = monomials.into_iter().collect();
        for m in &monomials {
            ring.check(m)?;
        }
        Ok(Self::from_unchecked(ring, monomials))
    }

    pub(crate) fn from_unchecked(ring: RingDescriptor, mut monomials: Vec<Monomial>) -> Self {
        monomials.sort_by(canonical_cmp);
        monomials.dedup();
        let mut gens: Vec<Monomial> = Vec::with_capacity(monomials.len());
        // After sorting by degree only earlier elements can divide later ones.
        for m in monomials {
            if !gens.iter().any(|g| g.divides(&m)) {
                gens.push(m);
            }
        }
        Self { ring, gens }
    }

    pub fn zero(ring: RingDescriptor) -> Self {
        Self { ring, gens: Vec::new() }
    }

    pub fn unit(ring: RingDescriptor) -> Self {
        let one = ring.one();
        Self { ring, gens: vec![one] }
    }

    /// The monomial prime generated by the given variables.
    pub fn prime(ring: RingDescriptor, vars: &VarSet) -> Self {
        let gens = vars.iter().map(|&i| ring.var(i)).collect();
        Self::from_unchecked(ring, gens)
    }

    pub fn principal(ring: RingDescriptor, m: Monomial) -> Result<Self> {
        Self::new(ring, [m])
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    /// `G(I)` in canonical order.
    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn max_degree(&self) -> u64 {
        self.gens.iter().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn contains(&self, u: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(u))
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    fn check_ring(&self, other: &MonomialIdeal) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "[{}] vs [{}]",
                self.ring.names().join(" "),
                other.ring.names().join(" ")
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.sum_unchecked(other))
    }

    fn sum_unchecked(&self, other: &MonomialIdeal) -> Self {
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Self::from_unchecked(self.ring.clone(), gens)
    }

    #[cfg(test)]
    fn add_generator(&self, m: Monomial) -> Self {
        let mut gens = self.gens.clone();
        gens.push(m);
        Self::from_unchecked(self.ring.clone(), gens)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.product_unchecked(other))
    }

    fn product_unchecked(&self, other: &MonomialIdeal) -> Self {
        let gens = self
            .gens
            .iter()
            .flat_map(|u| other.gens.iter().map(move |v| u.mul(v)))
            .collect();
        Self::from_unchecked(self.ring.clone(), gens)
    }

    pub fn intersection(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.intersection_unchecked(other))
    }

    fn intersection_unchecked(&self, other: &MonomialIdeal) -> Self {
        let gens = self
            .gens
            .iter()
            .flat_map(|u| other.gens.iter().map(move |v| u.lcm(v)))
            .collect();
        Self::from_unchecked(self.ring.clone(), gens)
    }

    /// Intersection of a nonempty family over a common ring.
    pub fn intersect_all<'a>(ideals: impl IntoIterator<Item = &'a MonomialIdeal>) -> Result<Self> {
        let mut iter = ideals.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::InvalidArgument("intersection of an empty family".into()))?;
        iter.try_fold(first.clone(), |acc, j| acc.intersection(j))
    }

    /// `I : (u)`.
    pub fn colon_monomial(&self, u: &Monomial) -> Result<Self> {
        self.ring.check(u)?;
        let gens = self.gens.iter().map(|g| g.div(&g.gcd(u))).collect();
        Ok(Self::from_unchecked(self.ring.clone(), gens))
    }

    /// `I : J = ⋂_{u ∈ G(J)} I : (u)`.
    pub fn colon(&self, other: &MonomialIdeal) -> Result<Self> {
        self.check_ring(other)?;
        if other.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let parts = other
            .gens
            .iter()
            .map(|u| self.colon_monomial(u))
            .collect::<Result<Vec<_>>>()?;
        Self::intersect_all(&parts)
    }

    pub fn radical(&self) -> Self {
        let gens = self.gens.iter().map(Monomial::squarefree_part).collect();
        Self::from_unchecked(self.ring.clone(), gens)
    }

    /// `I^k` for `k >= 1`.
    pub fn power(&self, k: u32) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidArgument(format!("power exponent must be >= 1, got {k}")));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product_unchecked(self);
        }
        Ok(acc)
    }

    /// If the ideal is primary, the variables of its radical.
    ///
    /// A monomial ideal is primary iff every variable that occurs in some
    /// generator also occurs as a pure power generator.
    pub fn primary_radical(&self) -> Option<VarSet> {
        if self.is_zero() || self.is_unit() {
            return None;
        }
        let occurring: VarSet = self.gens.iter().flat_map(|g| g.support()).collect();
        let pure: VarSet = self.gens.iter().filter_map(Monomial::pure_power_var).collect();
        (occurring == pure).then_some(pure)
    }

    pub fn is_primary(&self) -> bool {
        self.primary_radical().is_some()
    }

    /// Irredundant irreducible decomposition: every ideal generated by pure
    /// powers, none containing another.
    ///
    /// Generators are added one at a time. Since monomial ideals form a
    /// distributive lattice, `(∩ Q) + (u) = ∩ (Q + (u))`, and for an
    /// irreducible `Q` not containing `u`,
    /// `Q + (u) = ∩_{i ∈ supp u} (Q + (x_i^{u_i}))`.
    pub fn irreducible_components(&self) -> Result<Vec<MonomialIdeal>> {
        self.check_proper()?;
        let n = self.ring.nvars();
        // exponent vector of the pure powers; 0 means no power of x_j
        let contains = |q: &[u32], u: &Monomial| (0..n).any(|j| q[j] > 0 && q[j] <= u.exponent(j));
        let within = |small: &[u32], big: &[u32]| (0..n).all(|j| small[j] == 0 || (big[j] > 0 && big[j] <= small[j]));
        let mut comps: Vec<Vec<u32>> = vec![vec![0; n]];
        for u in &self.gens {
            let (kept, split): (Vec<Vec<u32>>, Vec<Vec<u32>>) = comps.into_iter().partition(|q| contains(q, u));
            let mut fresh: Vec<Vec<u32>> = Vec::new();
            for q in &split {
                for i in u.support() {
                    let mut c = q.clone();
                    c[i] = u.exponent(i);
                    fresh.push(c);
                }
            }
            fresh.sort();
            fresh.dedup();
            let redundant: Vec<bool> = fresh
                .iter()
                .map(|c| {
                    kept.iter().any(|k| within(k, c))
                        || fresh.iter().any(|d| d != c && within(d, c))
                })
                .collect();
            comps = kept;
            comps.extend(fresh.into_iter().zip(redundant).filter(|(_, r)| !r).map(|(c, _)| c));
        }
        let mut out: Vec<MonomialIdeal> = comps
            .into_iter()
            .map(|q| {
                let gens = (0..n)
                    .filter(|&j| q[j] > 0)
                    .map(|j| Monomial::var(n, j).pow(q[j]))
                    .collect();
                Self::from_unchecked(self.ring.clone(), gens)
            })
            .collect();
        out.sort_by(|a, b| a.gens.len().cmp(&b.gens.len()).then_with(|| cmp_gens(&a.gens, &b.gens)));
        Ok(out)
    }

    fn check_proper(&self) -> Result<()> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        Ok(())
    }

    /// Irredundant primary decomposition with pairwise distinct radicals.
    ///
    /// The irreducible components with a common radical are intersected.
    /// Components are ordered by radical (size, then indices).
    pub fn primary_decomposition(&self) -> Result<Vec<PrimaryComponent>> {
        let n = self.ring.nvars();
        let mut by_radical: Vec<(VarSet, Vec<Vec<u32>>)> = Vec::new();
        for q in self.irreducible_components()? {
            let radical = q.primary_radical().expect("pure-power ideals are primary");
            let mut b = vec![0u32; n];
            for g in &q.gens {
                let j = g.pure_power_var().expect("pure powers");
                b[j] = g.exponent(j);
            }
            match by_radical.iter_mut().find(|(r, _)| *r == radical) {
                Some((_, acc)) => acc.push(b),
                None => by_radical.push((radical, vec![b])),
            }
        }
        let by_radical: Vec<(VarSet, MonomialIdeal)> = by_radical
            .into_iter()
            .map(|(r, bs)| (r, intersect_pure_powers(&self.ring, &bs)))
            .collect();
        // Grouping an irredundant irreducible decomposition by radical is
        // already irredundant: dropping one group would drop each of its
        // members.
        let mut components: Vec<PrimaryComponent> = by_radical
            .into_iter()
            .map(|(radical, component)| PrimaryComponent { component, radical })
            .collect();
        components.sort_by(|a, b| cmp_varsets(&a.radical, &b.radical));
        Ok(components)
    }

    /// `Ass(S/I)`.
    pub fn associated_primes(&self) -> Result<BTreeSet<VarSet>> {
        Ok(self
            .primary_decomposition()?
            .into_iter()
            .map(|c| c.radical)
            .collect())
    }

    /// `Min(I)`: the inclusion-minimal associated primes.
    pub fn minimal_primes(&self) -> Result<BTreeSet<VarSet>> {
        let ass = self.associated_primes()?;
        Ok(minimal_sets(&ass))
    }

    pub fn height(&self) -> Result<usize> {
        Ok(self
            .minimal_primes()?
            .iter()
            .map(BTreeSet::len)
            .min()
            .expect("a proper nonzero ideal has a minimal prime"))
    }

    pub fn dimension_info(&self) -> Result<DimensionInfo> {
        let ass = self.associated_primes()?;
        let minimal = minimal_sets(&ass);
        let height = minimal.iter().map(BTreeSet::len).min().unwrap_or(0);
        let unmixed = ass.len() == minimal.len();
        Ok(DimensionInfo {
            height,
            unmixed,
            dim: unmixed.then(|| self.ring.nvars() - height),
        })
    }

    /// `I^(k)`: the intersection of the primary components of `I^k` whose
    /// radicals are minimal primes of `I`.
    pub fn symbolic_power(&self, k: u32) -> Result<Self> {
        let minimal = self.minimal_primes()?;
        let power = self.power(k)?;
        let parts: Vec<MonomialIdeal> = power
            .primary_decomposition()?
            .into_iter()
            .filter(|c| minimal.contains(&c.radical))
            .map(|c| c.component)
            .collect();
        Self::intersect_all(&parts)
    }

    /// Windowed detection of `Ass^∞(I)`: the first `s` with
    /// `Ass(S/I^s) = ... = Ass(S/I^{s+window-1})`, searching powers `<= cap`.
    /// This is a heuristic: constancy on a window does not prove stability.
    pub fn ass_infinity(&self, window: u32, cap: u32) -> Result<AssInfinity> {
        if window < 2 {
            return Err(Error::InvalidArgument(format!("window must be >= 2, got {window}")));
        }
        self.check_proper()?;
        let mut history: Vec<BTreeSet<VarSet>> = Vec::new();
        let mut power = self.clone();
        for s in 1..=cap {
            if s > 1 {
                power = power.product_unchecked(self);
            }
            history.push(power.associated_primes()?);
            if history.len() >= window as usize {
                let tail = &history[history.len() - window as usize..];
                if tail.iter().all(|a| *a == tail[0]) {
                    return Ok(AssInfinity::Stable {
                        primes: tail[0].clone(),
                        from: s + 1 - window,
                    });
                }
            }
        }
        Ok(AssInfinity::Undetermined { cap })
    }
}

// Intersection of the irreducible ideals `(x_j^{b_j} : b_j > 0)`. Each step
// keeps the generators already in the next ideal and raises one exponent
// of each of the others; only the raised ones can be redundant.
fn intersect_pure_powers(ring: &RingDescriptor, irreducibles: &[Vec<u32>]) -> MonomialIdeal {
    let n = ring.nvars();
    let mut gens: Vec<Vec<u32>> = vec![vec![0; n]];
    for b in irreducibles {
        let (kept, raise): (Vec<Vec<u32>>, Vec<Vec<u32>>) =
            gens.into_iter().partition(|g| (0..n).any(|j| b[j] > 0 && g[j] >= b[j]));
        let mut fresh: Vec<Vec<u32>> = Vec::new();
        for g in &raise {
            for j in (0..n).filter(|&j| b[j] > 0) {
                let mut h = g.clone();
                h[j] = b[j];
                fresh.push(h);
            }
        }
        fresh.sort();
        fresh.dedup();
        let divides = |a: &[u32], c: &[u32]| a.iter().zip(c).all(|(x, y)| x <= y);
        let redundant: Vec<bool> = fresh
            .iter()
            .map(|h| kept.iter().any(|k| divides(k, h)) || fresh.iter().any(|d| d != h && divides(d, h)))
            .collect();
        gens = kept;
        gens.extend(fresh.into_iter().zip(redundant).filter(|(_, r)| !r).map(|(h, _)| h));
    }
    MonomialIdeal::from_unchecked(ring.clone(), gens.into_iter().map(Monomial::new).collect())
}

fn cmp_gens(a: &[Monomial], b: &[Monomial]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match canonical_cmp(x, y) {
            std::cmp::Ordering::Equal => continue,
            ord => return ord,
        }
    }
    a.len().cmp(&b.len())
}

/// Orders primes by size, then by their index lists.
pub fn cmp_varsets(a: &VarSet, b: &VarSet) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter()))
}

pub fn minimal_sets(sets: &BTreeSet<VarSet>) -> BTreeSet<VarSet> {
    sets.iter()
        .filter(|p| !sets.iter().any(|q| q != *p && q.is_subset(p)))
        .cloned()
        .collect()
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("(0)");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| self.ring.format_monomial(g)).collect();
        write!(f, "({})", parts.join(", "))
    }
}
