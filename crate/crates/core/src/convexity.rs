//! Convex subalgebras of e-cyclic residuated lattices: generation, full
//! enumeration, the distributive lattice they form, and the embedding of that
//! lattice into the lattice-reduct congruences.

use crate::algebra::{Elem, FiniteResiduatedLattice, Subset};
use crate::{Error, Result};

/// A convex subalgebra given by its carrier bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexSubalgebra {
    pub members: Subset,
    /// Generating set this subalgebra was built from, when known.
    pub generators: Option<Subset>,
}

impl ConvexSubalgebra {
    pub fn contains(&self, x: Elem) -> bool {
        self.members & (1 << x) != 0
    }

    pub fn card(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> + '_ {
        let m = self.members;
        (0..Subset::BITS as usize).filter(move |&i| m & (1 << i) != 0)
    }
}

pub fn subset_of(elems: &[Elem]) -> Subset {
    elems.iter().fold(0, |acc, &x| acc | (1 << x))
}

pub fn subset_elems(s: Subset) -> Vec<Elem> {
    (0..Subset::BITS as usize).filter(|&i| s & (1 << i) != 0).collect()
}

fn require_e_cyclic(alg: &FiniteResiduatedLattice) -> Result<()> {
    if alg.flags().e_cyclic {
        Ok(())
    } else {
        Err(Error::NotECyclic)
    }
}

/// Submonoid generated by a subset (always contains the unit).
pub fn submonoid(alg: &FiniteResiduatedLattice, gens: Subset) -> Subset {
    let mut m: Subset = (1 << alg.unit()) | gens;
    loop {
        let mut next = m;
        for x in subset_elems(m) {
            for y in subset_elems(m) {
                next |= 1 << alg.mult(x, y);
            }
        }
        if next == m {
            return m;
        }
        m = next;
    }
}

/// `C[S] = {x : h <= |x| for some h in the submonoid generated by |S|}`.
pub fn convex_closure(alg: &FiniteResiduatedLattice, s: Subset) -> Result<ConvexSubalgebra> {
    require_e_cyclic(alg)?;
    let abs_gens = subset_elems(s).iter().fold(0, |acc, &x| acc | (1 << alg.abs(x)));
    let m = submonoid(alg, abs_gens);
    let mut members: Subset = 0;
    for x in alg.elems() {
        let ax = alg.abs(x);
        if subset_elems(m).iter().any(|&h| alg.le(h, ax)) {
            members |= 1 << x;
        }
    }
    debug_assert_eq!(members, naive_closure_oracle(alg, s));
    Ok(ConvexSubalgebra { members, generators: Some(s) })
}

/// Independent oracle: the least superset of `S ∪ {e}` closed under the five
/// operations and order-convexity, computed by plain fixpoint iteration.
pub fn naive_closure_oracle(alg: &FiniteResiduatedLattice, s: Subset) -> Subset {
    let mut h: Subset = s | (1 << alg.unit());
    loop {
        let mut next = h;
        let members = subset_elems(h);
        for &x in &members {
            for &y in &members {
                next |= 1 << alg.mult(x, y);
                next |= 1 << alg.lres(x, y);
                next |= 1 << alg.rres(x, y);
                next |= 1 << alg.join(x, y);
                next |= 1 << alg.meet(x, y);
                for z in alg.elems() {
                    if alg.le(x, z) && alg.le(z, y) {
                        next |= 1 << z;
                    }
                }
            }
        }
        if next == h {
            return h;
        }
        h = next;
    }
}

/// `C[a]` plus the exponent at which the powers of `|a|` stabilize.
pub fn principal_conv(
    alg: &FiniteResiduatedLattice,
    a: Elem,
) -> Result<(ConvexSubalgebra, usize)> {
    let sub = convex_closure(alg, 1 << a)?;
    let p = alg.abs(a);
    let mut exponent = 0;
    let mut cur = alg.unit();
    loop {
        let next = alg.mult(cur, p);
        if next == cur {
            break;
        }
        cur = next;
        exponent += 1;
    }
    Ok((sub, exponent))
}

/// Is `p` closed under multiplication and upward-closed in absolute value?
/// Coincides with being a convex subalgebra.
pub fn is_prefilter(alg: &FiniteResiduatedLattice, p: Subset) -> Result<bool> {
    require_e_cyclic(alg)?;
    if p == 0 {
        return Err(Error::EmptySet);
    }
    let members = subset_elems(p);
    let mut ok = members.iter().all(|&x| members.iter().all(|&y| p & (1 << alg.mult(x, y)) != 0));
    ok = ok
        && members.iter().all(|&x| {
            alg.elems().all(|y| !alg.le(alg.abs(x), alg.abs(y)) || p & (1 << y) != 0)
        });
    debug_assert_eq!(ok, is_convex_subalgebra(alg, p));
    Ok(ok)
}

/// Direct check: contains the unit, closed under all five operations, and
/// order-convex.
pub fn is_convex_subalgebra(alg: &FiniteResiduatedLattice, h: Subset) -> bool {
    if h & (1 << alg.unit()) == 0 {
        return false;
    }
    let members = subset_elems(h);
    for &x in &members {
        for &y in &members {
            for z in [alg.mult(x, y), alg.lres(x, y), alg.rres(x, y), alg.join(x, y), alg.meet(x, y)] {
                if h & (1 << z) == 0 {
                    return false;
                }
            }
            for z in alg.elems() {
                if alg.le(x, z) && alg.le(z, y) && h & (1 << z) == 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// The inclusion-ordered family of all convex subalgebras.
#[derive(Debug, Clone)]
pub struct ConvLattice {
    pub nodes: Vec<ConvexSubalgebra>,
    /// `k*k` inclusion matrix.
    pub leq: Vec<bool>,
    pub join: Vec<usize>,
    pub meet: Vec<usize>,
}

impl ConvLattice {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    pub fn node_of(&self, members: Subset) -> Option<usize> {
        self.nodes.iter().position(|n| n.members == members)
    }

    /// `{e}`
    pub fn bottom(&self) -> usize {
        0
    }

    /// The whole algebra.
    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.le(i, j) || self.le(j, i)))
    }

    /// Order matrix viewed as an abstract lattice.
    pub fn order_matrix(&self) -> (Vec<bool>, usize) {
        (self.leq.clone(), self.len())
    }
}

/// Enumerates all convex subalgebras: in a finite e-cyclic algebra every one
/// is principal, so the deduplicated family `{C[a] : a in L}` is already
/// closed under joins and meets. Canonical order: (cardinality, bitmask).
pub fn all_convex_subalgebras(alg: &FiniteResiduatedLattice) -> Result<ConvLattice> {
    require_e_cyclic(alg)?;
    let mut members: Vec<Subset> = Vec::new();
    for a in alg.elems() {
        let c = convex_closure(alg, 1 << a)?.members;
        if !members.contains(&c) {
            members.push(c);
        }
    }
    members.sort_by_key(|&m| (m.count_ones(), m));
    let k = members.len();
    let nodes: Vec<ConvexSubalgebra> = members
        .iter()
        .map(|&m| ConvexSubalgebra { members: m, generators: None })
        .collect();

    let mut leq = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            leq[i * k + j] = members[i] & !members[j] == 0;
        }
    }
    let mut join = vec![0; k * k];
    let mut meet = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            // meets are intersections
            let inter = members[i] & members[j];
            meet[i * k + j] = members
                .iter()
                .position(|&m| m == inter)
                .ok_or(Error::DistributivityViolation)?;
            // join is the closure of the union; Lemma 3.6 makes it principal
            let jn = convex_closure(alg, members[i] | members[j])?.members;
            join[i * k + j] = members
                .iter()
                .position(|&m| m == jn)
                .ok_or(Error::DistributivityViolation)?;
        }
    }
    let lat = ConvLattice { nodes, leq, join, meet };
    // distributivity assertion (Theorem-level invariant; failure is a bug)
    for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                let lhs = lat.meet[x * k + lat.join[y * k + z]];
                let rhs = lat.join[lat.meet[x * k + y] * k + lat.meet[x * k + z]];
                if lhs != rhs {
                    return Err(Error::DistributivityViolation);
                }
            }
        }
    }
    Ok(lat)
}

/// Report of the Lemma 3.6 meet/join equalities for a pair of generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeetJoinReport {
    pub meet_members: Subset,
    pub join_members: Subset,
}

/// Computes `C[a] ∩ C[b] = C[|a| ∨ |b|]` and
/// `C[a] ∨ C[b] = C[|a| ∧ |b|] = C[|a||b|]`, asserting both chains of
/// equalities.
pub fn conv_meet_join_check(
    alg: &FiniteResiduatedLattice,
    a: Elem,
    b: Elem,
) -> Result<MeetJoinReport> {
    let ca = convex_closure(alg, 1 << a)?.members;
    let cb = convex_closure(alg, 1 << b)?.members;
    let (aa, ab) = (alg.abs(a), alg.abs(b));
    let meet_members = convex_closure(alg, 1 << alg.join(aa, ab))?.members;
    assert_eq!(meet_members, ca & cb, "C[a] ∩ C[b] = C[|a| ∨ |b|]");
    let join_via_meet = convex_closure(alg, 1 << alg.meet(aa, ab))?.members;
    let join_via_mult = convex_closure(alg, 1 << alg.mult(aa, ab))?.members;
    assert_eq!(join_via_meet, join_via_mult, "C[|a| ∧ |b|] = C[|a||b|]");
    let join_members = convex_closure(alg, ca | cb)?.members;
    assert_eq!(join_members, join_via_meet, "C[a] ∨ C[b] = C[|a| ∧ |b|]");
    Ok(MeetJoinReport { meet_members, join_members })
}

// ---------------------------------------------------------------------------
// Θ_H and lattice congruences
// ---------------------------------------------------------------------------

/// A partition of the carrier by block id, normalized so that block ids
/// appear in order of their least element.
pub type Partition = Vec<usize>;

pub fn normalize_partition(p: &mut Partition) {
    let mut map: Vec<Option<usize>> = vec![None; p.len()];
    let mut next = 0;
    for b in p.iter_mut() {
        let id = match map[*b] {
            Some(id) => id,
            None => {
                map[*b] = Some(next);
                next += 1;
                next - 1
            }
        };
        *b = id;
    }
}

/// Is the partition compatible with join and meet?
pub fn is_lattice_congruence(alg: &FiniteResiduatedLattice, p: &Partition) -> bool {
    let n = alg.size();
    for a in 0..n {
        for a2 in 0..n {
            if p[a] != p[a2] {
                continue;
            }
            for b in 0..n {
                if p[alg.join(a, b)] != p[alg.join(a2, b)] || p[alg.meet(a, b)] != p[alg.meet(a2, b)] {
                    return false;
                }
            }
        }
    }
    true
}

/// Is the partition compatible with all five operations?
pub fn is_full_congruence(alg: &FiniteResiduatedLattice, p: &Partition) -> bool {
    if !is_lattice_congruence(alg, p) {
        return false;
    }
    let n = alg.size();
    for a in 0..n {
        for a2 in 0..n {
            if p[a] != p[a2] {
                continue;
            }
            for b in 0..n {
                if p[alg.mult(a, b)] != p[alg.mult(a2, b)]
                    || p[alg.mult(b, a)] != p[alg.mult(b, a2)]
                    || p[alg.lres(a, b)] != p[alg.lres(a2, b)]
                    || p[alg.lres(b, a)] != p[alg.lres(b, a2)]
                    || p[alg.rres(a, b)] != p[alg.rres(a2, b)]
                    || p[alg.rres(b, a)] != p[alg.rres(b, a2)]
                {
                    return false;
                }
            }
        }
    }
    true
}

/// `Θ_H = {⟨a,b⟩ : (a\b) ∧ (b\a) ∧ e ∈ H}`, returned as a partition of the
/// carrier. Always an equivalence compatible with the lattice operations,
/// with `[e] = H`.
pub fn theta_of(alg: &FiniteResiduatedLattice, h: Subset) -> Result<Partition> {
    require_e_cyclic(alg)?;
    let n = alg.size();
    let e = alg.unit();
    let related = |a: Elem, b: Elem| {
        let w = alg.meet(alg.meet(alg.lres(a, b), alg.lres(b, a)), e);
        h & (1 << w) != 0
    };
    // sanity: the relation is an equivalence before we collapse it
    for a in 0..n {
        assert!(related(a, a), "Θ_H reflexive");
        for b in 0..n {
            assert_eq!(related(a, b), related(b, a), "Θ_H symmetric");
            for c in 0..n {
                assert!(!(related(a, b) && related(b, c)) || related(a, c), "Θ_H transitive");
            }
        }
    }
    let mut p: Partition = vec![0; n];
    let mut reps: Vec<Elem> = Vec::new();
    for a in 0..n {
        match reps.iter().position(|&r| related(r, a)) {
            Some(i) => p[a] = i,
            None => {
                reps.push(a);
                p[a] = reps.len() - 1;
            }
        }
    }
    assert!(is_lattice_congruence(alg, &p), "Θ_H compatible with ∨ and ∧");
    let e_block: Subset = (0..n).filter(|&x| p[x] == p[e]).fold(0, |acc, x| acc | (1 << x));
    assert_eq!(e_block, h, "[e]_Θ_H = H");
    Ok(p)
}

/// Join of two partitions as equivalence relations: transitive closure of
/// the union of their blocks.
pub fn partition_join(a: &Partition, b: &Partition) -> Partition {
    let n = a.len();
    let mut p: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for x in 0..n {
        for y in 0..n {
            if a[x] == a[y] || b[x] == b[y] {
                let (rx, ry) = (find(&mut p, x), find(&mut p, y));
                if rx != ry {
                    p[rx] = ry;
                }
            }
        }
    }
    let mut out: Partition = (0..n).map(|x| find(&mut p, x)).collect();
    normalize_partition(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::builtin;

    fn by(alg: &FiniteResiduatedLattice, s: &str) -> Elem {
        alg.names().iter().position(|n| n == s).unwrap()
    }

    #[test]
    fn closure_of_empty_and_unit() {
        let alg = builtin("example5").unwrap();
        let e = alg.unit();
        assert_eq!(convex_closure(&alg, 0).unwrap().members, 1 << e);
        assert_eq!(convex_closure(&alg, 1 << e).unwrap().members, 1 << e);
    }

    #[test]
    fn example5_principal_subalgebras() {
        let alg = builtin("example5").unwrap();
        let (a, b, c, e) = (by(&alg, "a"), by(&alg, "b"), by(&alg, "c"), by(&alg, "e"));
        assert_eq!(
            convex_closure(&alg, 1 << a).unwrap().members,
            subset_of(&[a, e])
        );
        assert_eq!(
            convex_closure(&alg, 1 << b).unwrap().members,
            subset_of(&[b, e])
        );
        // c·c = 0 pulls in the bottom; convexity fills the interval
        assert_eq!(
            convex_closure(&alg, 1 << c).unwrap().members,
            (1 << alg.size()) - 1
        );
    }

    #[test]
    fn principal_exponents() {
        let alg = builtin("godel3").unwrap();
        let (sub, n) = principal_conv(&alg, alg.unit()).unwrap();
        assert_eq!(sub.members, 1 << alg.unit());
        assert_eq!(n, 0);
        let m = 1;
        let (sub, n) = principal_conv(&alg, m).unwrap();
        assert_eq!(sub.members, subset_of(&[m, alg.unit()]));
        assert_eq!(n, 1);
        let alg = builtin("lukasiewicz3").unwrap();
        let (sub, n) = principal_conv(&alg, 1).unwrap();
        assert_eq!(sub.members, (1 << 3) - 1);
        assert_eq!(n, 2);
    }

    #[test]
    fn conv_lattice_shapes() {
        let alg = builtin("chain2").unwrap();
        assert_eq!(all_convex_subalgebras(&alg).unwrap().len(), 2);

        let alg = builtin("godel3").unwrap();
        let lat = all_convex_subalgebras(&alg).unwrap();
        assert_eq!(lat.len(), 3);
        assert!(lat.is_chain());

        let alg = builtin("example5").unwrap();
        let lat = all_convex_subalgebras(&alg).unwrap();
        assert_eq!(lat.len(), 4);
        assert!(!lat.is_chain());
        let (a, b, e) = (by(&alg, "a"), by(&alg, "b"), by(&alg, "e"));
        assert!(lat.node_of(subset_of(&[a, e])).is_some());
        assert!(lat.node_of(subset_of(&[b, e])).is_some());
    }

    #[test]
    fn meet_join_check_cases() {
        let alg = builtin("example5").unwrap();
        let (a, b, e) = (by(&alg, "a"), by(&alg, "b"), by(&alg, "e"));
        let r = conv_meet_join_check(&alg, a, b).unwrap();
        assert_eq!(r.meet_members, 1 << e);
        assert_eq!(r.join_members, (1 << alg.size()) - 1);
        // a = b: everything collapses to C[a]
        let r = conv_meet_join_check(&alg, a, a).unwrap();
        assert_eq!(r.meet_members, subset_of(&[a, e]));
        assert_eq!(r.join_members, subset_of(&[a, e]));

        let alg = builtin("godel3").unwrap();
        let r = conv_meet_join_check(&alg, 1, 0).unwrap();
        assert_eq!(r.meet_members, subset_of(&[1, alg.unit()]));
        assert_eq!(r.join_members, (1 << 3) - 1);
    }

    #[test]
    fn prefilter_equivalence() {
        let alg = builtin("example5").unwrap();
        let (a, e) = (by(&alg, "a"), by(&alg, "e"));
        assert!(is_prefilter(&alg, 1 << e).unwrap());
        assert!(is_prefilter(&alg, subset_of(&[a, e])).unwrap());
        assert!(!is_prefilter(&alg, subset_of(&[by(&alg, "0"), e])).unwrap());
        assert_eq!(is_prefilter(&alg, 0), Err(Error::EmptySet));
    }

    #[test]
    fn theta_examples() {
        let alg = builtin("example5").unwrap();
        let (a, e) = (by(&alg, "a"), by(&alg, "e"));
        let n = alg.size();
        let id = theta_of(&alg, 1 << e).unwrap();
        assert_eq!(id, (0..n).collect::<Partition>());
        let full = theta_of(&alg, (1 << n) - 1).unwrap();
        assert!(full.iter().all(|&b| b == 0));
        // H = {a,e}: lattice-compatible but not a full congruence (H not normal)
        let p = theta_of(&alg, subset_of(&[a, e])).unwrap();
        assert_eq!(p[a], p[e]);
        assert!(is_lattice_congruence(&alg, &p));
        assert!(!is_full_congruence(&alg, &p));
    }

    #[test]
    fn theta_monotone_and_injective() {
        for name in ["godel3", "example5", "nonintegral3", "boolean4"] {
            let alg = builtin(name).unwrap();
            let lat = all_convex_subalgebras(&alg).unwrap();
            let thetas: Vec<Partition> = lat
                .nodes
                .iter()
                .map(|nd| theta_of(&alg, nd.members).unwrap())
                .collect();
            for i in 0..lat.len() {
                for j in 0..lat.len() {
                    let finer = (0..alg.size())
                        .all(|x| (0..alg.size()).all(|y| thetas[i][x] != thetas[i][y] || thetas[j][x] == thetas[j][y]));
                    assert_eq!(lat.le(i, j), finer);
                }
            }
        }
    }

    #[test]
    fn corollary_h_equals_c_of_negative_part() {
        for name in ["godel3", "lukasiewicz3", "example5", "nonintegral3", "boolean4"] {
            let alg = builtin(name).unwrap();
            let e = alg.unit();
            let lat = all_convex_subalgebras(&alg).unwrap();
            for node in &lat.nodes {
                let hneg: Subset = node
                    .elems()
                    .filter(|&x| alg.le(x, e))
                    .fold(0, |acc, x| acc | (1 << x));
                assert_eq!(convex_closure(&alg, hneg).unwrap().members, node.members);
            }
        }
    }
}
