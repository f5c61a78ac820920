//! Normal convex subalgebras, their generation by iterated conjugation,
//! the correspondence with congruences, quotient algebras, the Hamiltonian
//! grading, and semilinearity deciders by several independent routes.

use crate::algebra::{ConjKind, Elem, FiniteResiduatedLattice, RawAlgebra, Subset};
use crate::convexity::{
    all_convex_subalgebras, convex_closure, is_full_congruence, normalize_partition, partition_join,
    subset_elems, theta_of, ConvLattice, ConvexSubalgebra, Partition,
};
use crate::laws::{catalog_law, ham1_left, ham1_right, ham1_star_left, ham1_star_right, ham2_left, ham2_right};
use crate::term::check_law;
use crate::{Error, Result};

fn in_set(s: Subset, x: Elem) -> bool {
    s & (1 << x) != 0
}

// ---------------------------------------------------------------------------
// Normality
// ---------------------------------------------------------------------------

/// Decides normality of a convex subalgebra by three routes that must agree:
/// closure under λ/ρ conjugation, the two-sided residual criterion, and
/// closure under the star conjugations. Returns the first violating pair
/// (element of H, conjugating element) when not normal.
pub fn is_normal(
    alg: &FiniteResiduatedLattice,
    h: Subset,
) -> Result<(bool, Option<(Elem, Elem)>)> {
    debug_assert!(crate::convexity::is_convex_subalgebra(alg, h));
    let e = alg.unit();
    let mut witness = None;
    for x in subset_elems(h) {
        for u in alg.elems() {
            if !in_set(h, alg.conjugate(ConjKind::Lambda, u, x))
                || !in_set(h, alg.conjugate(ConjKind::Rho, u, x))
            {
                witness = Some((x, u));
                break;
            }
        }
        if witness.is_some() {
            break;
        }
    }
    let by_def = witness.is_none();
    let by_residuals = alg.elems().all(|a| {
        alg.elems().all(|b| {
            in_set(h, alg.meet(alg.lres(a, b), e)) == in_set(h, alg.meet(alg.rres(b, a), e))
        })
    });
    let by_star = subset_elems(h).iter().all(|&x| {
        alg.elems().all(|u| {
            in_set(h, alg.conjugate(ConjKind::LambdaStar, u, x))
                && in_set(h, alg.conjugate(ConjKind::RhoStar, u, x))
        })
    });
    assert_eq!(by_def, by_residuals, "conjugation and residual criteria agree");
    assert_eq!(by_def, by_star, "star-conjugation criterion agrees");
    Ok((by_def, witness))
}

/// Which conjugation family generates the closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjFamily {
    Gamma,
    GammaStar,
}

fn closure_with(
    alg: &FiniteResiduatedLattice,
    s: Subset,
    kinds: [ConjKind; 2],
) -> Result<Subset> {
    let mut members = convex_closure(alg, s)?.members;
    loop {
        let mut gens = members;
        for x in subset_elems(members) {
            for u in alg.elems() {
                for kind in kinds {
                    gens |= 1 << alg.conjugate(kind, u, x);
                }
            }
        }
        let next = convex_closure(alg, gens)?.members;
        if next == members {
            return Ok(members);
        }
        members = next;
    }
}

/// `NC[S]`: the least normal convex subalgebra containing S, as the fixpoint
/// of conjugation plus convex closure. The λ/ρ and λ*/ρ* families generate
/// the same subalgebra; both are computed and compared.
pub fn normal_closure(
    alg: &FiniteResiduatedLattice,
    s: Subset,
    family: ConjFamily,
) -> Result<ConvexSubalgebra> {
    if !alg.flags().e_cyclic {
        return Err(Error::NotECyclic);
    }
    let plain = closure_with(alg, s, [ConjKind::Lambda, ConjKind::Rho])?;
    let star = closure_with(alg, s, [ConjKind::LambdaStar, ConjKind::RhoStar])?;
    assert_eq!(plain, star, "both conjugation families generate the same closure");
    let members = match family {
        ConjFamily::Gamma => plain,
        ConjFamily::GammaStar => star,
    };
    assert!(is_normal(alg, members)?.0);
    Ok(ConvexSubalgebra { members, generators: Some(s) })
}

/// Node indices of the normal convex subalgebras; closed under the lattice
/// operations of `lat`.
pub fn all_normal(alg: &FiniteResiduatedLattice, lat: &ConvLattice) -> Result<Vec<usize>> {
    let mut normal = Vec::new();
    for (i, node) in lat.nodes.iter().enumerate() {
        if is_normal(alg, node.members)?.0 {
            normal.push(i);
        }
    }
    let k = lat.len();
    for &i in &normal {
        for &j in &normal {
            assert!(normal.contains(&lat.join[i * k + j]), "normal nodes join-closed");
            assert!(normal.contains(&lat.meet[i * k + j]), "normal nodes meet-closed");
        }
    }
    Ok(normal)
}

// ---------------------------------------------------------------------------
// Congruences
// ---------------------------------------------------------------------------

const ORACLE_GUARD: usize = 8;

fn principal_congruence(alg: &FiniteResiduatedLattice, a: Elem, b: Elem) -> Partition {
    let n = alg.size();
    let mut p: Partition = (0..n).collect();
    let merge = |p: &mut Partition, x: Elem, y: Elem| {
        let (bx, by) = (p[x], p[y]);
        if bx != by {
            for v in p.iter_mut() {
                if *v == by {
                    *v = bx;
                }
            }
            true
        } else {
            false
        }
    };
    merge(&mut p, a, b);
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                if p[x] != p[y] {
                    continue;
                }
                for z in 0..n {
                    for (u, v) in [
                        (alg.mult(x, z), alg.mult(y, z)),
                        (alg.mult(z, x), alg.mult(z, y)),
                        (alg.lres(x, z), alg.lres(y, z)),
                        (alg.lres(z, x), alg.lres(z, y)),
                        (alg.rres(x, z), alg.rres(y, z)),
                        (alg.rres(z, x), alg.rres(z, y)),
                        (alg.join(x, z), alg.join(y, z)),
                        (alg.meet(x, z), alg.meet(y, z)),
                    ] {
                        changed |= merge(&mut p, u, v);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    normalize_partition(&mut p);
    p
}

/// All congruences by brute force: full partition enumeration for carriers
/// up to 8, and join-closure of the principal congruences beyond that.
/// Sorted canonically (coarseness, then lexicographic block string).
pub fn congruences_oracle(alg: &FiniteResiduatedLattice) -> Result<Vec<Partition>> {
    let n = alg.size();
    let mut found: Vec<Partition> = Vec::new();
    if n <= ORACLE_GUARD {
        // restricted growth strings enumerate all set partitions
        let mut rgs: Partition = vec![0; n];
        loop {
            if is_full_congruence(alg, &rgs) {
                let mut p = rgs.clone();
                normalize_partition(&mut p);
                found.push(p);
            }
            // next restricted growth string
            let mut i = n;
            loop {
                if i == 1 {
                    i = 0;
                    break;
                }
                i -= 1;
                let cap = rgs[..i].iter().copied().max().unwrap_or(0) + 1;
                if rgs[i] < cap {
                    rgs[i] += 1;
                    for v in rgs[i + 1..].iter_mut() {
                        *v = 0;
                    }
                    break;
                }
            }
            if i == 0 {
                break;
            }
        }
    } else {
        let principals: Vec<Partition> = {
            let mut ps = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    let p = principal_congruence(alg, a, b);
                    if !ps.contains(&p) {
                        ps.push(p);
                    }
                }
            }
            ps
        };
        let identity: Partition = (0..n).collect();
        found.push(identity);
        let mut frontier = found.clone();
        while let Some(theta) = frontier.pop() {
            for p in &principals {
                let joined = partition_join(&theta, p);
                if !found.contains(&joined) {
                    found.push(joined.clone());
                    frontier.push(joined);
                }
            }
        }
    }
    found.sort_by_key(|p| (p.iter().max().copied().unwrap_or(0), p.clone()));
    found.dedup();
    Ok(found)
}

/// Verifies the mutually inverse bijection between normal convex subalgebras
/// and congruences on a given algebra; returns the common count.
pub fn normal_congruence_bijection(alg: &FiniteResiduatedLattice) -> Result<usize> {
    let lat = all_convex_subalgebras(alg)?;
    let normal = all_normal(alg, &lat)?;
    let congs = congruences_oracle(alg)?;
    assert_eq!(normal.len(), congs.len(), "|NC(L)| = |Con(L)|");
    for &i in &normal {
        let h = lat.nodes[i].members;
        let theta = theta_of(alg, h)?;
        assert!(congs.contains(&theta), "Θ_H is a congruence");
        let e_block: Subset = (0..alg.size())
            .filter(|&x| theta[x] == theta[alg.unit()])
            .fold(0, |acc, x| acc | (1 << x));
        assert_eq!(e_block, h, "[e]_{{Θ_H}} = H");
    }
    for theta in &congs {
        let e_block: Subset = (0..alg.size())
            .filter(|&x| theta[x] == theta[alg.unit()])
            .fold(0, |acc, x| acc | (1 << x));
        let node = lat.node_of(e_block).expect("[e]_Θ is a convex subalgebra");
        assert!(normal.contains(&node), "[e]_Θ is normal");
        assert_eq!(&theta_of(alg, e_block)?, theta, "Θ ↦ [e]_Θ ↦ Θ round-trips");
    }
    Ok(normal.len())
}

// ---------------------------------------------------------------------------
// Quotients
// ---------------------------------------------------------------------------

/// L/H for a normal H: tables on blocks (least-index representatives),
/// revalidated, with the block map. Representative independence is verified.
pub fn quotient(
    alg: &FiniteResiduatedLattice,
    h: Subset,
) -> Result<(FiniteResiduatedLattice, Vec<usize>)> {
    if !is_normal(alg, h)?.0 {
        return Err(Error::NotNormal);
    }
    let theta = theta_of(alg, h)?;
    let n = alg.size();
    let k = theta.iter().max().copied().unwrap_or(0) + 1;
    let mut reps = vec![usize::MAX; k];
    for x in 0..n {
        if reps[theta[x]] == usize::MAX {
            reps[theta[x]] = x;
        }
    }
    // well-definedness: table entries do not depend on representatives
    for x in 0..n {
        for y in 0..n {
            let (bx, by) = (theta[x], theta[y]);
            assert_eq!(theta[alg.mult(x, y)], theta[alg.mult(reps[bx], reps[by])]);
            assert_eq!(theta[alg.lres(x, y)], theta[alg.lres(reps[bx], reps[by])]);
            assert_eq!(theta[alg.rres(x, y)], theta[alg.rres(reps[bx], reps[by])]);
            assert_eq!(theta[alg.join(x, y)], theta[alg.join(reps[bx], reps[by])]);
        }
    }
    let names: Vec<String> = reps.iter().map(|&r| format!("[{}]", alg.name_of(r))).collect();
    let mut leq = vec![false; k * k];
    let mut mult = vec![0; k * k];
    let mut lres = vec![0; k * k];
    let mut rres = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            leq[i * k + j] = theta[alg.meet(reps[i], reps[j])] == i;
            mult[i * k + j] = theta[alg.mult(reps[i], reps[j])];
            lres[i * k + j] = theta[alg.lres(reps[i], reps[j])];
            rres[i * k + j] = theta[alg.rres(reps[i], reps[j])];
        }
    }
    let raw = RawAlgebra {
        names,
        leq,
        mult,
        unit: theta[alg.unit()],
        f_const: alg.f_const().map(|f| theta[f]),
        lres: Some(lres),
        rres: Some(rres),
    };
    let q = FiniteResiduatedLattice::validate(raw)?;
    // the block map is a homomorphism
    for x in 0..n {
        for y in 0..n {
            assert_eq!(theta[alg.mult(x, y)], q.mult(theta[x], theta[y]));
            assert_eq!(theta[alg.join(x, y)], q.join(theta[x], theta[y]));
            assert_eq!(theta[alg.meet(x, y)], q.meet(theta[x], theta[y]));
        }
    }
    // a prime kernel plus prelinearity forces a totally ordered quotient
    let lat = all_convex_subalgebras(alg)?;
    if let Some(node) = lat.node_of(h) {
        let lp = check_law(alg, &catalog_law("LP")?, None)?.holds();
        let rp = check_law(alg, &catalog_law("RP")?, None)?.holds();
        if (lp || rp) && crate::spectrum::primes(&lat).contains(&node) {
            assert!(q.flags().chain, "prime quotients are chains under prelinearity");
        }
    }
    Ok((q, theta))
}

// ---------------------------------------------------------------------------
// Hamiltonian grading
// ---------------------------------------------------------------------------

/// Least exponents (m,n) with `(x∧e)^m ≤ λ_y(x)` and `(x∧e)^n ≤ ρ_y(x)`, or
/// None. Cross-checked against the |x|-variant, the star-conjugation
/// variant, and the definition (every convex subalgebra normal).
pub fn hamiltonian_degree(alg: &FiniteResiduatedLattice) -> Result<Option<(usize, usize)>> {
    if !alg.flags().e_cyclic {
        return Err(Error::NotECyclic);
    }
    // powers of negative elements stabilize within |L| steps
    let bound = alg.size();
    let find = |mk: &dyn Fn(usize) -> crate::term::Law| -> Result<Option<usize>> {
        for m in 1..=bound {
            if check_law(alg, &mk(m), None)?.holds() {
                return Ok(Some(m));
            }
        }
        Ok(None)
    };
    let m = find(&ham1_left)?;
    let n = find(&ham1_right)?;
    let degree = match (m, n) {
        (Some(m), Some(n)) => Some((m, n)),
        _ => None,
    };
    let m2 = find(&ham2_left)?;
    let n2 = find(&ham2_right)?;
    assert_eq!(
        degree.is_some(),
        m2.is_some() && n2.is_some(),
        "absolute-value grading agrees"
    );
    let ms = find(&ham1_star_left)?;
    let ns = find(&ham1_star_right)?;
    assert_eq!(
        degree.is_some(),
        ms.is_some() && ns.is_some(),
        "star-conjugation grading disagrees with the plain one; investigate"
    );
    let lat = all_convex_subalgebras(alg)?;
    let every_normal = all_normal(alg, &lat)?.len() == lat.len();
    assert_eq!(degree.is_some(), every_normal, "degree exists iff every node is normal");
    Ok(degree)
}

/// Interleaving inequalities between plain and star conjugations:
/// `λ*_{xy}(x) ≤ λ_y(x)`, `λ_{x\y}(x) ≤ λ*_y(x)`, and their mirrors.
pub fn conjugation_interleaving_check(alg: &FiniteResiduatedLattice) -> bool {
    alg.elems().all(|x| {
        alg.elems().all(|y| {
            alg.le(alg.conjugate(ConjKind::LambdaStar, alg.mult(x, y), x), alg.conjugate(ConjKind::Lambda, y, x))
                && alg.le(alg.conjugate(ConjKind::Lambda, alg.lres(x, y), x), alg.conjugate(ConjKind::LambdaStar, y, x))
                && alg.le(alg.conjugate(ConjKind::RhoStar, alg.mult(y, x), x), alg.conjugate(ConjKind::Rho, y, x))
                && alg.le(alg.conjugate(ConjKind::Rho, alg.rres(y, x), x), alg.conjugate(ConjKind::RhoStar, y, x))
        })
    })
}

// ---------------------------------------------------------------------------
// Semilinearity
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemiRoute {
    Identity,
    Spectral,
    BruteForce,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilinearVerdict {
    pub semilinear: bool,
    /// Route that produced the verdict (spectral degrades to brute force
    /// without prelinearity).
    pub route: SemiRoute,
    /// Kernels of a subdirect embedding into chain quotients, when found.
    pub decomposition: Option<Vec<Subset>>,
    /// Counterexample assignment to the defining identity, when it fails.
    pub counterexample: Option<Vec<Elem>>,
}

fn identity_route(alg: &FiniteResiduatedLattice) -> Result<(bool, Option<Vec<Elem>>)> {
    let main = check_law(alg, &catalog_law("SEMI_EQ1")?, None)?;
    let verdict = main.holds();
    for name in ["SEMI_EQ1B", "SEMI_EQ3A", "SEMI_EQ3B", "SEMI_ALT_L", "SEMI_ALT_R", "SEMI_ALT_L_STAR", "SEMI_ALT_R_STAR"] {
        assert_eq!(
            check_law(alg, &catalog_law(name)?, None)?.holds(),
            verdict,
            "equivalent semilinearity identities agree ({name})"
        );
    }
    let lp = check_law(alg, &catalog_law("LP")?, None)?.holds();
    let rp = check_law(alg, &catalog_law("RP")?, None)?.holds();
    if lp || rp {
        for name in ["SEMI_EQ2", "SEMI_EQ4"] {
            assert_eq!(
                check_law(alg, &catalog_law(name)?, None)?.holds(),
                verdict,
                "quasi-identity route agrees under prelinearity ({name})"
            );
        }
    } else if verdict {
        // the identities entail prelinearity
        unreachable!("semilinearity identity holds but prelinearity fails");
    }
    let counterexample = match main {
        crate::term::LawVerdict::Holds => None,
        crate::term::LawVerdict::Counterexample(cx) => Some(cx),
    };
    Ok((verdict, counterexample))
}

fn chain_quotient(alg: &FiniteResiduatedLattice, h: Subset) -> Result<bool> {
    Ok(quotient(alg, h)?.0.flags().chain)
}

fn spectral_route(
    alg: &FiniteResiduatedLattice,
    lat: &ConvLattice,
) -> Result<(bool, Option<Vec<Subset>>)> {
    let mins = crate::spectrum::minimal_primes(alg, lat);
    let mut kernels = Vec::new();
    for &p in &mins {
        let pm = lat.nodes[p].members;
        if !is_normal(alg, pm)?.0 {
            return Ok((false, None));
        }
        kernels.push(pm);
    }
    for &k in &kernels {
        assert!(chain_quotient(alg, k)?, "normal prime kernels give chain quotients");
    }
    Ok((true, Some(kernels)))
}

fn bruteforce_route(
    alg: &FiniteResiduatedLattice,
    lat: &ConvLattice,
) -> Result<(bool, Option<Vec<Subset>>)> {
    let normal = all_normal(alg, lat)?;
    let full = (1u32 << alg.size()) - 1;
    let usable: Vec<Subset> = normal
        .iter()
        .map(|&i| lat.nodes[i].members)
        .filter(|&m| {
            // kernels whose quotient is a chain
            chain_quotient(alg, m).unwrap_or(false)
        })
        .collect();
    // subsets in lexicographic order over the canonical node list
    let k = usable.len();
    for mask in 1u32..1 << k {
        let mut inter = full;
        let mut family = Vec::new();
        for (i, &m) in usable.iter().enumerate() {
            if mask & (1 << i) != 0 {
                inter &= m;
                family.push(m);
            }
        }
        if inter == 1 << alg.unit() {
            return Ok((true, Some(family)));
        }
    }
    Ok((false, None))
}

pub fn is_semilinear(alg: &FiniteResiduatedLattice, route: SemiRoute) -> Result<SemilinearVerdict> {
    if !alg.flags().e_cyclic {
        return Err(Error::NotECyclic);
    }
    let lp = check_law(alg, &catalog_law("LP")?, None)?.holds();
    let rp = check_law(alg, &catalog_law("RP")?, None)?.holds();
    match route {
        SemiRoute::Identity => {
            let (semilinear, counterexample) = identity_route(alg)?;
            Ok(SemilinearVerdict { semilinear, route, decomposition: None, counterexample })
        }
        SemiRoute::Spectral => {
            let lat = all_convex_subalgebras(alg)?;
            if lp || rp {
                let (semilinear, decomposition) = spectral_route(alg, &lat)?;
                Ok(SemilinearVerdict { semilinear, route, decomposition, counterexample: None })
            } else {
                // prime quotients need not be chains here; fall back
                let (semilinear, decomposition) = bruteforce_route(alg, &lat)?;
                Ok(SemilinearVerdict {
                    semilinear,
                    route: SemiRoute::BruteForce,
                    decomposition,
                    counterexample: None,
                })
            }
        }
        SemiRoute::BruteForce => {
            let lat = all_convex_subalgebras(alg)?;
            let (semilinear, decomposition) = bruteforce_route(alg, &lat)?;
            Ok(SemilinearVerdict { semilinear, route, decomposition, counterexample: None })
        }
        SemiRoute::All => {
            let ident = is_semilinear(alg, SemiRoute::Identity)?;
            let brute = is_semilinear(alg, SemiRoute::BruteForce)?;
            assert_eq!(ident.semilinear, brute.semilinear, "identity and subdirect routes agree");
            if lp || rp {
                let spectral = is_semilinear(alg, SemiRoute::Spectral)?;
                assert_eq!(ident.semilinear, spectral.semilinear, "spectral route agrees");
            }
            Ok(SemilinearVerdict {
                semilinear: ident.semilinear,
                route,
                decomposition: brute.decomposition,
                counterexample: ident.counterexample,
            })
        }
    }
}

/// The 5-variable implicational identity deciding semilinearity for integral
/// algebras; checked with the variable cap raised internally.
pub fn kuhr_integral_check(alg: &FiniteResiduatedLattice) -> Result<bool> {
    if !alg.flags().integral {
        return Err(Error::NotIntegral);
    }
    let verdict = check_law(alg, &catalog_law("KUHR_IRL")?, Some(5))?.holds();
    assert_eq!(
        verdict,
        is_semilinear(alg, SemiRoute::BruteForce)?.semilinear,
        "implicational identity matches the subdirect verdict"
    );
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convexity::subset_of;
    use crate::structures::builtin;

    fn by(alg: &FiniteResiduatedLattice, s: &str) -> Elem {
        alg.names().iter().position(|n| n == s).unwrap()
    }

    #[test]
    fn normality_on_example5() {
        let alg = builtin("example5").unwrap();
        let (a, b, e) = (by(&alg, "a"), by(&alg, "b"), by(&alg, "e"));
        let (ok, w) = is_normal(&alg, subset_of(&[a, e])).unwrap();
        assert!(!ok);
        assert_eq!(w, Some((a, b)));
        assert!(is_normal(&alg, 1 << e).unwrap().0);
        assert!(is_normal(&alg, (1 << alg.size()) - 1).unwrap().0);
    }

    #[test]
    fn commutative_algebras_all_normal() {
        for name in ["godel3", "lukasiewicz3", "boolean4", "nonintegral3"] {
            let alg = builtin(name).unwrap();
            let lat = all_convex_subalgebras(&alg).unwrap();
            assert_eq!(all_normal(&alg, &lat).unwrap().len(), lat.len());
        }
    }

    #[test]
    fn normal_closures() {
        let alg = builtin("example5").unwrap();
        let (a, e) = (by(&alg, "a"), by(&alg, "e"));
        assert_eq!(normal_closure(&alg, 1 << e, ConjFamily::Gamma).unwrap().members, 1 << e);
        // λ_b(a) = 0 pulls the bottom in
        assert_eq!(
            normal_closure(&alg, 1 << a, ConjFamily::Gamma).unwrap().members,
            (1 << alg.size()) - 1
        );
        let chain = builtin("godel3").unwrap();
        assert_eq!(
            normal_closure(&chain, 1 << 1, ConjFamily::GammaStar).unwrap().members,
            subset_of(&[1, chain.unit()])
        );
    }

    #[test]
    fn congruence_counts() {
        let alg = builtin("chain2").unwrap();
        assert_eq!(congruences_oracle(&alg).unwrap().len(), 2);
        assert_eq!(normal_congruence_bijection(&alg).unwrap(), 2);
        // example5 is simple
        let alg = builtin("example5").unwrap();
        assert_eq!(congruences_oracle(&alg).unwrap().len(), 2);
        assert_eq!(normal_congruence_bijection(&alg).unwrap(), 2);
        let alg = builtin("godel3").unwrap();
        assert_eq!(normal_congruence_bijection(&alg).unwrap(), 3);
    }

    #[test]
    fn principal_generation_matches_enumeration() {
        for name in ["godel3", "lukasiewicz3", "example5", "boolean4"] {
            let alg = builtin(name).unwrap();
            let by_enum = congruences_oracle(&alg).unwrap();
            let mut principals = Vec::new();
            for a in 0..alg.size() {
                for b in a + 1..alg.size() {
                    principals.push(principal_congruence(&alg, a, b));
                }
            }
            for p in &principals {
                assert!(by_enum.contains(p));
            }
        }
    }

    #[test]
    fn quotient_cases() {
        let alg = builtin("godel3").unwrap();
        let h = subset_of(&[1, alg.unit()]);
        let (q, map) = quotient(&alg, h).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(map[1], map[alg.unit()]);
        // by {e}: isomorphic copy
        let (q, _) = quotient(&alg, 1 << alg.unit()).unwrap();
        assert_eq!(q.size(), 3);
        // by L: one element
        let (q, _) = quotient(&alg, (1 << alg.size()) - 1).unwrap();
        assert_eq!(q.size(), 1);
        // non-normal kernel is refused
        let e5 = builtin("example5").unwrap();
        let (a, e) = (by(&e5, "a"), by(&e5, "e"));
        assert_eq!(quotient(&e5, subset_of(&[a, e])).err(), Some(Error::NotNormal));
    }

    #[test]
    fn hamiltonian_degrees() {
        assert_eq!(hamiltonian_degree(&builtin("godel3").unwrap()).unwrap(), Some((1, 1)));
        assert_eq!(hamiltonian_degree(&builtin("boolean4").unwrap()).unwrap(), Some((1, 1)));
        assert_eq!(hamiltonian_degree(&builtin("example5").unwrap()).unwrap(), None);
    }

    #[test]
    fn interleaving_inequalities() {
        for name in ["trivial", "chain2", "godel3", "lukasiewicz3", "example5", "nonintegral3", "boolean4"] {
            assert!(conjugation_interleaving_check(&builtin(name).unwrap()), "{name}");
        }
    }

    #[test]
    fn semilinearity_routes() {
        for name in ["chain2", "godel3", "lukasiewicz3", "nonintegral3"] {
            let alg = builtin(name).unwrap();
            let v = is_semilinear(&alg, SemiRoute::All).unwrap();
            assert!(v.semilinear, "{name}");
        }
        let alg = builtin("example5").unwrap();
        let v = is_semilinear(&alg, SemiRoute::All).unwrap();
        assert!(!v.semilinear);
        assert!(v.counterexample.is_some());
        for r in [SemiRoute::Identity, SemiRoute::Spectral, SemiRoute::BruteForce] {
            assert!(!is_semilinear(&alg, r).unwrap().semilinear);
        }
    }

    #[test]
    fn product_of_chains_is_semilinear() {
        let p = builtin("godel3")
            .unwrap()
            .direct_product(&builtin("chain2").unwrap())
            .unwrap();
        let v = is_semilinear(&p, SemiRoute::Spectral).unwrap();
        assert!(v.semilinear);
        assert_eq!(v.decomposition.unwrap().len(), 2);
    }

    #[test]
    fn kuhr_checks() {
        assert!(kuhr_integral_check(&builtin("godel3").unwrap()).unwrap());
        assert!(kuhr_integral_check(&builtin("lukasiewicz3").unwrap()).unwrap());
        assert!(!kuhr_integral_check(&builtin("example5").unwrap()).unwrap());
        assert_eq!(
            kuhr_integral_check(&builtin("nonintegral3").unwrap()).err(),
            Some(Error::NotIntegral)
        );
    }
}
