//! The prime spectrum of the convex-subalgebra lattice: polars, relative
//! pseudocomplements, (minimal) primes, the double-polar Boolean algebra,
//! relative normality, and the negative-cone ideal/filter correspondence.
//! Also holds the abstract finite-distributive-lattice utilities these
//! results reduce to.

use crate::algebra::{Elem, FiniteResiduatedLattice, Subset};
use crate::convexity::{
    all_convex_subalgebras, convex_closure, subset_elems, ConvLattice, ConvexSubalgebra,
};
use crate::laws::catalog_law;
use crate::term::check_law;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Abstract finite lattices
// ---------------------------------------------------------------------------

/// A standalone finite bounded lattice given by its order matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    pub size: usize,
    pub leq: Vec<bool>,
    pub join: Vec<usize>,
    pub meet: Vec<usize>,
    pub bottom: usize,
    pub top: usize,
}

impl FiniteLattice {
    pub fn from_leq(leq: Vec<bool>, size: usize) -> Result<FiniteLattice> {
        crate::algebra::check_partial_order(&leq, size)?;
        let (join, meet) = crate::algebra::lattice_tables(&leq, size)?;
        let bottom = (0..size)
            .find(|&b| (0..size).all(|x| leq[b * size + x]))
            .ok_or(Error::NotALattice(0, 0, "bottom"))?;
        let top = (0..size)
            .find(|&t| (0..size).all(|x| leq[x * size + t]))
            .ok_or(Error::NotALattice(0, 0, "top"))?;
        Ok(FiniteLattice { size, leq, join, meet, bottom, top })
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.size + y]
    }

    pub fn jn(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size + y]
    }

    pub fn mt(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size + y]
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.size;
        (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| self.mt(x, self.jn(y, z)) == self.jn(self.mt(x, y), self.mt(x, z))))
        })
    }

    /// `a → b = max{z : a ∧ z ≤ b}`; total when the lattice is distributive.
    pub fn rel_pc(&self, a: usize, b: usize) -> Result<usize> {
        let cands: Vec<usize> = (0..self.size).filter(|&z| self.le(self.mt(a, z), b)).collect();
        cands
            .iter()
            .copied()
            .find(|&m| cands.iter().all(|&z| self.le(z, m)))
            .ok_or(Error::NoMaximum(a, b))
    }

    /// Pseudocomplement `¬a = a → ⊥`.
    pub fn neg(&self, a: usize) -> Result<usize> {
        self.rel_pc(a, self.bottom)
    }

    /// Is `p` meet-prime: `x ∧ y ≤ p` implies `x ≤ p` or `y ≤ p`?
    /// Coincides with meet-irreducibility in distributive lattices.
    pub fn is_meet_irreducible(&self, p: usize) -> bool {
        let n = self.size;
        (0..n).all(|x| (0..n).all(|y| !self.le(self.mt(x, y), p) || self.le(x, p) || self.le(y, p)))
    }

    /// Proper meet-irreducible elements in index order.
    pub fn meet_irreducibles(&self) -> Vec<usize> {
        (0..self.size).filter(|&p| p != self.top && self.is_meet_irreducible(p)).collect()
    }

    pub fn minimal_meet_irreducibles(&self) -> Vec<usize> {
        let mi = self.meet_irreducibles();
        mi.iter()
            .copied()
            .filter(|&p| mi.iter().all(|&q| !self.le(q, p) || q == p))
            .collect()
    }

    /// For all pairs (a,b), do witnesses u,v exist with `u ∧ v = ⊥` and
    /// `u ∨ b = a ∨ b = a ∨ v`? Returns the first failing pair otherwise.
    pub fn monteiro_check(&self) -> (bool, Option<(usize, usize)>) {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                let ab = self.jn(a, b);
                let found = (0..n).any(|u| {
                    (0..n).any(|v| {
                        self.mt(u, v) == self.bottom && self.jn(u, b) == ab && self.jn(a, v) == ab
                    })
                });
                if !found {
                    return (false, Some((a, b)));
                }
            }
        }
        (true, None)
    }

    /// Do the proper meet-irreducibles above each meet-irreducible form a
    /// chain (root-system property of the prime ideals)?
    pub fn prime_root_system(&self) -> bool {
        let mi = self.meet_irreducibles();
        mi.iter().all(|&p| {
            let above: Vec<usize> = mi.iter().copied().filter(|&q| self.le(p, q)).collect();
            above.iter().all(|&x| above.iter().all(|&y| self.le(x, y) || self.le(y, x)))
        })
    }

    /// Interpolation property: for meet-irreducible p and `a → b ≤ p`, some
    /// meet-irreducible q has `a ≰ q` and `b ≤ q ≤ p`. Holds in every finite
    /// distributive lattice.
    pub fn irreducible_interpolation_check(&self) -> bool {
        let mi = self.meet_irreducibles();
        for &p in &mi {
            for a in 0..self.size {
                for b in 0..self.size {
                    let pc = match self.rel_pc(a, b) {
                        Ok(pc) => pc,
                        Err(_) => return false,
                    };
                    if !self.le(pc, p) {
                        continue;
                    }
                    let ok = mi
                        .iter()
                        .any(|&q| !self.le(a, q) && self.le(b, q) && self.le(q, p));
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Three-way equivalence for a meet-irreducible p: minimality among the
    /// meet-irreducibles, `c ≤ p ⇒ ¬c ≰ p`, and `p = ⋁{¬c : c ≰ p}`.
    pub fn minimality_equivalence(&self, p: usize) -> Result<[bool; 3]> {
        let mi = self.meet_irreducibles();
        let c1 = mi.iter().all(|&q| !self.le(q, p) || q == p);
        let mut c2 = true;
        for c in 0..self.size {
            if self.le(c, p) && self.le(self.neg(c)?, p) {
                c2 = false;
            }
        }
        let mut sup = self.bottom;
        for c in 0..self.size {
            if !self.le(c, p) {
                sup = self.jn(sup, self.neg(c)?);
            }
        }
        let c3 = sup == p;
        Ok([c1, c2, c3])
    }
}

/// Order matrix of a `ConvLattice` viewed abstractly.
pub fn conv_as_lattice(lat: &ConvLattice) -> FiniteLattice {
    let k = lat.len();
    FiniteLattice {
        size: k,
        leq: lat.leq.clone(),
        join: lat.join.clone(),
        meet: lat.meet.clone(),
        bottom: lat.bottom(),
        top: lat.top(),
    }
}

// ---------------------------------------------------------------------------
// Polars and relative pseudocomplements
// ---------------------------------------------------------------------------

fn in_set(s: Subset, x: Elem) -> bool {
    s & (1 << x) != 0
}

/// `X^⊥ = {a : |a| ∨ |x| = e for all x ∈ X}`, defined for any subset.
pub fn polar(alg: &FiniteResiduatedLattice, x: Subset) -> Result<ConvexSubalgebra> {
    if !alg.flags().e_cyclic {
        return Err(Error::NotECyclic);
    }
    let e = alg.unit();
    let gens = subset_elems(x);
    let members: Subset = alg
        .elems()
        .filter(|&a| gens.iter().all(|&g| alg.join(alg.abs(a), alg.abs(g)) == e))
        .fold(0, |acc, a| acc | (1 << a));
    // X^⊥ = C[X]^⊥, and polars are convex subalgebras
    let cx = convex_closure(alg, x)?.members;
    let via_closure: Subset = alg
        .elems()
        .filter(|&a| subset_elems(cx).iter().all(|&g| alg.join(alg.abs(a), alg.abs(g)) == e))
        .fold(0, |acc, a| acc | (1 << a));
    assert_eq!(members, via_closure, "X^⊥ = C[X]^⊥");
    debug_assert!(crate::convexity::is_convex_subalgebra(alg, members));
    Ok(ConvexSubalgebra { members, generators: Some(x) })
}

/// `X → Y`, computed element-wise and as `max{Z : X ∩ Z ⊆ Y}` over the
/// lattice of convex subalgebras; both routes must agree. Returns the node
/// index in `lat`.
pub fn rel_pseudocomplement(
    alg: &FiniteResiduatedLattice,
    lat: &ConvLattice,
    x: usize,
    y: usize,
) -> Result<usize> {
    let xs = subset_elems(lat.nodes[x].members);
    let ym = lat.nodes[y].members;
    let members: Subset = alg
        .elems()
        .filter(|&a| xs.iter().all(|&g| in_set(ym, alg.join(alg.abs(a), alg.abs(g)))))
        .fold(0, |acc, a| acc | (1 << a));
    let node = lat.node_of(members).ok_or(Error::DistributivityViolation)?;
    let abstract_node = conv_as_lattice(lat).rel_pc(x, y)?;
    assert_eq!(node, abstract_node, "element-wise X→Y = max{{Z : X∩Z ⊆ Y}}");
    Ok(node)
}

// ---------------------------------------------------------------------------
// Primes
// ---------------------------------------------------------------------------

/// Proper meet-irreducible nodes, in canonical node order.
pub fn primes(lat: &ConvLattice) -> Vec<usize> {
    conv_as_lattice(lat).meet_irreducibles()
}

/// Inclusion-minimal primes; their intersection is always `{e}`.
pub fn minimal_primes(alg: &FiniteResiduatedLattice, lat: &ConvLattice) -> Vec<usize> {
    let mins = conv_as_lattice(lat).minimal_meet_irreducibles();
    if lat.len() > 1 {
        let inter = mins
            .iter()
            .fold((1u32 << alg.size()) - 1, |acc, &p| acc & lat.nodes[p].members);
        assert_eq!(inter, 1 << alg.unit(), "∩ minimal primes = {{e}}");
    }
    mins
}

/// The five prime conditions for a convex subalgebra, evaluated
/// independently. They must pairwise agree whenever the algebra satisfies
/// the left prelinearity law; without it only their raw values are reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeCharReport {
    /// meet-irreducibility; |a|∨|b| ∈ H; |a|∨|b| = e; residual condition;
    /// chain above H
    pub conditions: [bool; 5],
    pub lp_holds: bool,
    pub agree: bool,
}

pub fn prime_characterization_check(
    alg: &FiniteResiduatedLattice,
    lat: &ConvLattice,
    h: usize,
) -> Result<PrimeCharReport> {
    let hm = lat.nodes[h].members;
    let e = alg.unit();
    let c1 = conv_as_lattice(lat).is_meet_irreducible(h);
    let pair_all = |f: &dyn Fn(Elem, Elem) -> bool| alg.elems().all(|a| alg.elems().all(|b| f(a, b)));
    let c2 = pair_all(&|a, b| {
        !in_set(hm, alg.join(alg.abs(a), alg.abs(b))) || in_set(hm, a) || in_set(hm, b)
    });
    let c3 = pair_all(&|a, b| {
        alg.join(alg.abs(a), alg.abs(b)) != e || in_set(hm, a) || in_set(hm, b)
    });
    let c4 = pair_all(&|a, b| {
        in_set(hm, alg.meet(alg.lres(a, b), e)) || in_set(hm, alg.meet(alg.lres(b, a), e))
    });
    let above: Vec<usize> = (0..lat.len()).filter(|&k| lat.le(h, k)).collect();
    let c5 = above.iter().all(|&x| above.iter().all(|&y| lat.le(x, y) || lat.le(y, x)));
    let lp_holds = check_law(alg, &catalog_law("LP")?, None)?.holds();
    let conditions = [c1, c2, c3, c4, c5];
    let agree = conditions.iter().all(|&c| c == c1);
    if lp_holds {
        assert!(agree, "prime conditions must coincide under prelinearity");
    }
    Ok(PrimeCharReport { conditions, lp_holds, agree })
}

// ---------------------------------------------------------------------------
// Relative normality
// ---------------------------------------------------------------------------

/// Monteiro-style witness check on the convex-subalgebra lattice, plus the
/// root-system property of its prime ideals; the two verdicts always agree.
pub fn relatively_normal(alg: &FiniteResiduatedLattice, lat: &ConvLattice) -> Result<bool> {
    let abs = conv_as_lattice(lat);
    let (monteiro, _) = abs.monteiro_check();
    let roots = abs.prime_root_system();
    assert_eq!(monteiro, roots, "witness condition ⇔ prime-ideal root system");
    let lp = check_law(alg, &catalog_law("LP")?, None)?.holds();
    let rp = check_law(alg, &catalog_law("RP")?, None)?.holds();
    if lp || rp {
        assert!(monteiro, "prelinearity forces relative normality");
    }
    Ok(monteiro)
}

// ---------------------------------------------------------------------------
// Minimal-prime characterizations
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinPrimeReport {
    /// minimality; `x ∈ P ⇒ x^⊥ ⊈ P`; the polar-union formula
    pub conditions: [bool; 3],
    pub is_minimal: bool,
}

/// Evaluates the three equivalent minimality conditions for a prime node and
/// cross-checks them against their abstract-lattice counterparts.
pub fn minimal_prime_characterization(
    alg: &FiniteResiduatedLattice,
    lat: &ConvLattice,
    p: usize,
) -> Result<MinPrimeReport> {
    let abs = conv_as_lattice(lat);
    if p == lat.top() || !abs.is_meet_irreducible(p) {
        return Err(Error::NotPrime);
    }
    let pm = lat.nodes[p].members;
    let c1 = primes(lat).iter().all(|&q| !lat.le(q, p) || q == p);
    let mut c2 = true;
    let mut union: Subset = 0;
    for x in alg.elems() {
        let px = polar(alg, 1 << x)?.members;
        if in_set(pm, x) {
            if px & !pm == 0 {
                c2 = false;
            }
        } else {
            union |= px;
        }
    }
    let c3 = union == pm;
    let conditions = [c1, c2, c3];
    assert!(
        conditions.iter().all(|&c| c == c1),
        "minimal-prime conditions must coincide"
    );
    let abstract_conditions = abs.minimality_equivalence(p)?;
    assert_eq!(conditions, abstract_conditions, "abstract route agrees");
    Ok(MinPrimeReport { conditions, is_minimal: c1 })
}

// ---------------------------------------------------------------------------
// The double-polar Boolean algebra
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarBooleanReport {
    /// Node indices of the fixed points of H ↦ H^⊥⊥, in canonical order.
    pub nodes: Vec<usize>,
}

/// Fixed points of the double-polar closure form a Boolean algebra with
/// complement `H^⊥`, meet `∩`, and join `(H^⊥ ∩ K^⊥)^⊥`; all axioms are
/// verified.
pub fn double_polar_boolean(
    alg: &FiniteResiduatedLattice,
    lat: &ConvLattice,
) -> Result<PolarBooleanReport> {
    let pol = |m: Subset| -> Result<Subset> { Ok(polar(alg, m)?.members) };
    let mut nodes = Vec::new();
    for (i, node) in lat.nodes.iter().enumerate() {
        let double = pol(pol(node.members)?)?;
        if double == node.members {
            nodes.push(i);
        }
    }
    let full = (1u32 << alg.size()) - 1;
    assert!(nodes.contains(&lat.bottom()) && nodes.contains(&lat.top()));
    // polars are exactly the double-polar-fixed nodes
    for node in &lat.nodes {
        let p = pol(node.members)?;
        assert_eq!(pol(pol(p)?)?, p, "every polar is double-polar fixed");
    }
    for &i in &nodes {
        let hm = lat.nodes[i].members;
        let hp = pol(hm)?;
        assert_eq!(hm & hp, 1 << alg.unit(), "H ∩ H^⊥ = {{e}}");
        assert_eq!(pol(hp & pol(hp)?)?, full, "H ∨ H^⊥ = L in the Boolean algebra");
        for &j in &nodes {
            let km = lat.nodes[j].members;
            assert!(nodes.iter().any(|&k| lat.nodes[k].members == hm & km));
            let bjoin = pol(hp & pol(km)?)?;
            assert!(nodes.iter().any(|&k| lat.nodes[k].members == bjoin));
            assert_eq!(bjoin, pol(pol(hm | km)?)?, "(H^⊥ ∩ K^⊥)^⊥ = (H∪K)^⊥⊥");
        }
    }
    assert!(nodes.len().is_power_of_two(), "Boolean algebra has 2^k elements");
    Ok(PolarBooleanReport { nodes })
}

/// `H^⊥ = ⋂{P minimal prime : H ⊈ P}` (empty intersection is all of L).
pub fn polar_prime_meet(
    alg: &FiniteResiduatedLattice,
    lat: &ConvLattice,
    h: usize,
) -> Result<ConvexSubalgebra> {
    let hm = lat.nodes[h].members;
    let mut inter: Subset = (1 << alg.size()) - 1;
    for &p in &minimal_primes(alg, lat) {
        let pm = lat.nodes[p].members;
        if hm & !pm != 0 {
            inter &= pm;
        }
    }
    assert_eq!(inter, polar(alg, hm)?.members, "intersection formula gives H^⊥");
    Ok(ConvexSubalgebra { members: inter, generators: None })
}

// ---------------------------------------------------------------------------
// Negative-cone ideals and filters
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegconeReport {
    /// Maximal lattice ideals of (L⁻,∨,∧), as carrier bitmasks.
    pub maximal_ideals: Vec<Subset>,
    /// Minimal prime lattice filters of (L⁻,∨,∧); complements of the above.
    pub minimal_prime_filters: Vec<Subset>,
    /// The minimal prime convex subalgebras they induce, in matching order.
    pub minimal_primes: Vec<Subset>,
}

const NEGCONE_GUARD: usize = 20;

/// Correspondence between maximal ideals of the negative cone, minimal prime
/// filters, and minimal prime convex subalgebras; every claim is asserted.
pub fn negcone_ideal_correspondence(
    alg: &FiniteResiduatedLattice,
    force: bool,
) -> Result<NegconeReport> {
    if !alg.flags().e_cyclic {
        return Err(Error::NotECyclic);
    }
    let e = alg.unit();
    let neg: Vec<Elem> = alg.elems().filter(|&x| alg.le(x, e)).collect();
    if neg.len() > NEGCONE_GUARD && !force {
        return Err(Error::SizeGuard(neg.len(), NEGCONE_GUARD));
    }
    let negset: Subset = neg.iter().fold(0, |acc, &x| acc | (1 << x));
    let decode = |mask: u32| -> Subset {
        neg.iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .fold(0, |acc, (_, &x)| acc | (1 << x))
    };
    let is_ideal = |s: Subset| {
        s != 0
            && subset_elems(s).iter().all(|&x| {
                neg.iter().all(|&y| !alg.le(y, x) || in_set(s, y))
                    && subset_elems(s).iter().all(|&y| in_set(s, alg.join(x, y)))
            })
    };
    let is_prime_filter = |s: Subset| {
        s != 0
            && subset_elems(s).iter().all(|&x| {
                neg.iter().all(|&y| !alg.le(x, y) || in_set(s, y))
                    && subset_elems(s).iter().all(|&y| in_set(s, alg.meet(x, y)))
            })
            && neg.iter().all(|&x| {
                neg.iter().all(|&y| !in_set(s, alg.join(x, y)) || in_set(s, x) || in_set(s, y))
            })
    };
    let mut ideals = Vec::new();
    let mut prime_filters = Vec::new();
    for mask in 0u32..1 << neg.len() {
        let s = decode(mask);
        if s != negset && is_ideal(s) {
            ideals.push(s);
        }
        if s != negset && is_prime_filter(s) {
            prime_filters.push(s);
        }
    }
    let maximal_ideals: Vec<Subset> = ideals
        .iter()
        .copied()
        .filter(|&i| ideals.iter().all(|&j| i & !j != 0 || i == j))
        .collect();
    let minimal_prime_filters: Vec<Subset> = prime_filters
        .iter()
        .copied()
        .filter(|&f| prime_filters.iter().all(|&g| g & !f != 0 || f == g))
        .collect();
    // complement bijection
    let mut complements: Vec<Subset> = maximal_ideals.iter().map(|&i| negset & !i).collect();
    let mut sorted_filters = minimal_prime_filters.clone();
    complements.sort_unstable();
    sorted_filters.sort_unstable();
    assert_eq!(complements, sorted_filters, "maximal ideals ↔ minimal prime filters");

    let lat = all_convex_subalgebras(alg)?;
    let min_nodes: Vec<Subset> = minimal_primes(alg, &lat)
        .into_iter()
        .map(|p| lat.nodes[p].members)
        .collect();
    let mut induced = Vec::new();
    for &i in &maximal_ideals {
        let mut h: Subset = 0;
        for a in subset_elems(i) {
            h |= polar(alg, 1 << a)?.members;
        }
        assert!(min_nodes.contains(&h), "induced subalgebra is a minimal prime");
        assert_eq!(h & negset, negset & !i, "H⁻ = L⁻ ∖ I");
        induced.push(h);
    }
    // every proper prime: minimal ⇔ complement of its negative part is a
    // maximal ideal ⇔ its negative part is a minimal prime filter
    for &p in &primes(&lat) {
        let pm = lat.nodes[p].members;
        let pneg = pm & negset;
        let c1 = min_nodes.contains(&pm);
        let c2 = maximal_ideals.contains(&(negset & !pneg));
        let c3 = minimal_prime_filters.contains(&pneg);
        assert!(c1 == c2 && c2 == c3, "minimality equivalences on the negative cone");
    }
    Ok(NegconeReport { maximal_ideals, minimal_prime_filters, minimal_primes: induced })
}

// ---------------------------------------------------------------------------
// Per-node annotations
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumAnnotation {
    pub is_prime: Vec<bool>,
    pub is_minimal_prime: Vec<bool>,
    pub is_polar: Vec<bool>,
    pub is_double_polar_fixed: Vec<bool>,
    /// For each element: the nodes maximal with respect to not containing it.
    pub values_of: Vec<Vec<usize>>,
}

pub fn annotate(alg: &FiniteResiduatedLattice, lat: &ConvLattice) -> Result<SpectrumAnnotation> {
    let k = lat.len();
    let pr = primes(lat);
    let minp = minimal_primes(alg, lat);
    let mut is_polar = vec![false; k];
    let mut is_double_polar_fixed = vec![false; k];
    for i in 0..k {
        let p = polar(alg, lat.nodes[i].members)?.members;
        if let Some(j) = lat.node_of(p) {
            is_polar[j] = true;
        }
        if polar(alg, p)?.members == lat.nodes[i].members {
            is_double_polar_fixed[i] = true;
        }
    }
    assert_eq!(is_polar, is_double_polar_fixed);
    let mut values_of = vec![Vec::new(); alg.size()];
    for a in alg.elems() {
        let without: Vec<usize> =
            (0..k).filter(|&i| !in_set(lat.nodes[i].members, a)).collect();
        values_of[a] = without
            .iter()
            .copied()
            .filter(|&i| without.iter().all(|&j| !lat.le(i, j) || i == j))
            .collect();
        // values are prime
        for &v in &values_of[a] {
            assert!(pr.contains(&v), "values are meet-irreducible");
        }
    }
    let mut is_prime = vec![false; k];
    let mut is_minimal_prime = vec![false; k];
    for &p in &pr {
        is_prime[p] = true;
    }
    for &p in &minp {
        is_minimal_prime[p] = true;
        assert!(is_prime[p]);
    }
    Ok(SpectrumAnnotation { is_prime, is_minimal_prime, is_polar, is_double_polar_fixed, values_of })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexity::subset_of;
    use crate::structures::builtin;

    fn by(alg: &FiniteResiduatedLattice, s: &str) -> Elem {
        alg.names().iter().position(|n| n == s).unwrap()
    }

    fn n5_lattice() -> FiniteLattice {
        // 0 < a < b < 1, 0 < c < 1, c incomparable to a and b
        let n = 5;
        let (o, a, b, _c, t) = (0usize, 1, 2, 3, 4);
        let mut leq = vec![false; n * n];
        let mut set = |x: usize, y: usize| leq[x * n + y] = true;
        for x in 0..n {
            set(x, x);
            set(o, x);
            set(x, t);
        }
        set(a, b);
        FiniteLattice::from_leq(leq, n).unwrap()
    }

    #[test]
    fn polar_basics() {
        let alg = builtin("example5").unwrap();
        let (a, b, e) = (by(&alg, "a"), by(&alg, "b"), by(&alg, "e"));
        assert_eq!(polar(&alg, 1 << a).unwrap().members, subset_of(&[b, e]));
        assert_eq!(polar(&alg, 1 << b).unwrap().members, subset_of(&[a, e]));
        assert_eq!(polar(&alg, 1 << e).unwrap().members, (1 << alg.size()) - 1);
        assert_eq!(polar(&alg, (1 << alg.size()) - 1).unwrap().members, 1 << e);
        // chains have trivial polars
        let chain = builtin("godel3").unwrap();
        for x in chain.elems() {
            if x != chain.unit() {
                assert_eq!(polar(&chain, 1 << x).unwrap().members, 1 << chain.unit());
            }
        }
    }

    #[test]
    fn rel_pseudocomplement_cases() {
        let alg = builtin("example5").unwrap();
        let lat = all_convex_subalgebras(&alg).unwrap();
        let (a, b, e) = (by(&alg, "a"), by(&alg, "b"), by(&alg, "e"));
        let ca = lat.node_of(subset_of(&[a, e])).unwrap();
        let triv = lat.node_of(1 << e).unwrap();
        let r = rel_pseudocomplement(&alg, &lat, ca, triv).unwrap();
        assert_eq!(lat.nodes[r].members, subset_of(&[b, e]));
        for x in 0..lat.len() {
            assert_eq!(rel_pseudocomplement(&alg, &lat, x, x).unwrap(), lat.top());
            assert_eq!(rel_pseudocomplement(&alg, &lat, triv, x).unwrap(), lat.top());
        }
    }

    #[test]
    fn primes_on_example5_and_chains() {
        let alg = builtin("example5").unwrap();
        let lat = all_convex_subalgebras(&alg).unwrap();
        let (a, b, e) = (by(&alg, "a"), by(&alg, "b"), by(&alg, "e"));
        let pr: Vec<Subset> = primes(&lat).iter().map(|&p| lat.nodes[p].members).collect();
        assert_eq!(pr, vec![subset_of(&[a, e]), subset_of(&[b, e])]);
        let minp: Vec<Subset> = minimal_primes(&alg, &lat)
            .iter()
            .map(|&p| lat.nodes[p].members)
            .collect();
        assert_eq!(minp, pr);

        let chain = builtin("godel3").unwrap();
        let clat = all_convex_subalgebras(&chain).unwrap();
        assert_eq!(primes(&clat).len(), 2);
        assert_eq!(minimal_primes(&chain, &clat).len(), 1);
        assert_eq!(clat.nodes[minimal_primes(&chain, &clat)[0]].members, 1 << chain.unit());
    }

    #[test]
    fn product_of_chains_minimal_primes() {
        let a = builtin("godel3").unwrap();
        let b = builtin("chain2").unwrap();
        let p = a.direct_product(&b).unwrap();
        let lat = all_convex_subalgebras(&p).unwrap();
        assert_eq!(minimal_primes(&p, &lat).len(), 2);
    }

    #[test]
    fn prime_characterization_cases() {
        let alg = builtin("example5").unwrap();
        let lat = all_convex_subalgebras(&alg).unwrap();
        let (a, e) = (by(&alg, "a"), by(&alg, "e"));
        let r = prime_characterization_check(&alg, &lat, lat.node_of(subset_of(&[a, e])).unwrap())
            .unwrap();
        assert!(r.lp_holds && r.agree && r.conditions == [true; 5]);
        // the improper node satisfies everything trivially
        let r = prime_characterization_check(&alg, &lat, lat.top()).unwrap();
        assert_eq!(r.conditions, [true; 5]);
        // {e} in example5 is not prime: C[a] ∩ C[b] = {e}
        let r = prime_characterization_check(&alg, &lat, lat.bottom()).unwrap();
        assert_eq!(r.conditions, [false; 5]);

        let chain = builtin("godel3").unwrap();
        let clat = all_convex_subalgebras(&chain).unwrap();
        let r = prime_characterization_check(&chain, &clat, clat.bottom()).unwrap();
        assert_eq!(r.conditions, [true; 5]);
    }

    #[test]
    fn monteiro_and_root_system() {
        // witnesses exist on the pentagon (prime ideals of N5 do form a
        // root system; failing the check needs a branching meet-irreducible
        // below incomparable ones)
        let n5 = n5_lattice();
        let (ok, witness) = n5.monteiro_check();
        assert!(ok && witness.is_none());
        assert!(n5.prime_root_system());

        // 0 < a < {b, c} < 1: the bottom is meet-irreducible with b, c
        // incomparable above it
        let kite = {
            let n = 5;
            let (o, a, b, c, t) = (0usize, 1, 2, 3, 4);
            let mut leq = vec![false; n * n];
            let mut set = |x: usize, y: usize| leq[x * n + y] = true;
            for x in 0..n {
                set(x, x);
                set(o, x);
                set(x, t);
            }
            set(a, b);
            set(a, c);
            FiniteLattice::from_leq(leq, n).unwrap()
        };
        assert!(kite.is_distributive());
        let (ok, witness) = kite.monteiro_check();
        assert!(!ok);
        // the incomparable coatoms have no disjoint witnesses
        assert_eq!(witness, Some((2, 3)));
        assert!(!kite.prime_root_system());

        let alg = builtin("example5").unwrap();
        let lat = all_convex_subalgebras(&alg).unwrap();
        assert!(relatively_normal(&alg, &lat).unwrap());
        let alg = builtin("boolean4").unwrap();
        let lat = all_convex_subalgebras(&alg).unwrap();
        assert!(relatively_normal(&alg, &lat).unwrap());
    }

    #[test]
    fn minimal_prime_reports() {
        let alg = builtin("example5").unwrap();
        let lat = all_convex_subalgebras(&alg).unwrap();
        let (a, e) = (by(&alg, "a"), by(&alg, "e"));
        let p = lat.node_of(subset_of(&[a, e])).unwrap();
        let r = minimal_prime_characterization(&alg, &lat, p).unwrap();
        assert!(r.is_minimal && r.conditions == [true; 3]);

        let chain = builtin("godel3").unwrap();
        let clat = all_convex_subalgebras(&chain).unwrap();
        let r = minimal_prime_characterization(&chain, &clat, clat.bottom()).unwrap();
        assert!(r.is_minimal);
        let m = clat.node_of(subset_of(&[1, chain.unit()])).unwrap();
        let r = minimal_prime_characterization(&chain, &clat, m).unwrap();
        assert!(!r.is_minimal);
        assert_eq!(
            minimal_prime_characterization(&chain, &clat, clat.top()),
            Err(Error::NotPrime)
        );
    }

    #[test]
    fn boolean_polar_sizes() {
        for (name, expect) in [("godel3", 2), ("example5", 4), ("chain2", 2)] {
            let alg = builtin(name).unwrap();
            let lat = all_convex_subalgebras(&alg).unwrap();
            assert_eq!(double_polar_boolean(&alg, &lat).unwrap().nodes.len(), expect);
        }
        let c2 = builtin("chain2").unwrap();
        let c8 = c2.direct_product(&c2).unwrap().direct_product(&c2).unwrap();
        let lat = all_convex_subalgebras(&c8).unwrap();
        assert_eq!(double_polar_boolean(&c8, &lat).unwrap().nodes.len(), 8);
    }

    #[test]
    fn polar_prime_meet_cases() {
        let alg = builtin("example5").unwrap();
        let lat = all_convex_subalgebras(&alg).unwrap();
        let (a, b, e) = (by(&alg, "a"), by(&alg, "b"), by(&alg, "e"));
        let h = lat.node_of(subset_of(&[a, e])).unwrap();
        assert_eq!(polar_prime_meet(&alg, &lat, h).unwrap().members, subset_of(&[b, e]));
        assert_eq!(
            polar_prime_meet(&alg, &lat, lat.bottom()).unwrap().members,
            (1 << alg.size()) - 1
        );
        assert_eq!(polar_prime_meet(&alg, &lat, lat.top()).unwrap().members, 1 << e);
    }

    #[test]
    fn negcone_correspondence_cases() {
        let alg = builtin("chain2").unwrap();
        let r = negcone_ideal_correspondence(&alg, false).unwrap();
        assert_eq!(r.maximal_ideals, vec![1 << alg.bottom()]);
        assert_eq!(r.minimal_primes, vec![1 << alg.unit()]);

        let alg = builtin("godel3").unwrap();
        let r = negcone_ideal_correspondence(&alg, false).unwrap();
        assert_eq!(r.maximal_ideals, vec![subset_of(&[0, 1])]);
        assert_eq!(r.minimal_primes, vec![1 << alg.unit()]);

        let alg = builtin("example5").unwrap();
        let r = negcone_ideal_correspondence(&alg, false).unwrap();
        assert_eq!(r.maximal_ideals.len(), 2);
        let (a, b, e) = (by(&alg, "a"), by(&alg, "b"), by(&alg, "e"));
        let mut minp = r.minimal_primes.clone();
        minp.sort_unstable();
        assert_eq!(minp, vec![subset_of(&[a, e]), subset_of(&[b, e])]);
    }

    #[test]
    fn annotation_consistency() {
        let alg = builtin("example5").unwrap();
        let lat = all_convex_subalgebras(&alg).unwrap();
        let ann = annotate(&alg, &lat).unwrap();
        assert_eq!(ann.is_polar, vec![true; 4]);
        let c = by(&alg, "c");
        // the values of c are the two atoms of the conv lattice
        assert_eq!(ann.values_of[c].len(), 2);
        assert!(ann.values_of[by(&alg, "e")].is_empty());
    }

    #[test]
    fn interpolation_on_small_distributive_lattices() {
        let chain = builtin("godel3").unwrap();
        let lat = conv_as_lattice(&all_convex_subalgebras(&chain).unwrap());
        assert!(lat.is_distributive());
        assert!(lat.irreducible_interpolation_check());
        assert!(!n5_lattice().is_distributive());
    }
}
