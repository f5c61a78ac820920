//! Built-in example algebras, GBL/GMV classification with the
//! invertible/integral decomposition, the hyper-Archimedean lattice
//! conditions, and the parametric rational chain `B_n` evaluated in exact
//! arithmetic.

use num_rational::Rational64;
use num_traits::Zero;

use crate::algebra::{FiniteResiduatedLattice, RawAlgebra, Subset};
use crate::convexity::{all_convex_subalgebras, convex_closure, subset_elems};
use crate::laws::catalog_law;
use crate::spectrum::{polar, primes};
use crate::term::check_law;
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Builtins
// ---------------------------------------------------------------------------

fn build(
    names: &[&str],
    leq_pairs: &[(usize, usize)],
    mult: &[usize],
    unit: usize,
    f_const: Option<usize>,
) -> Result<FiniteResiduatedLattice> {
    let n = names.len();
    let mut leq = vec![false; n * n];
    for x in 0..n {
        leq[x * n + x] = true;
    }
    for &(lo, hi) in leq_pairs {
        leq[lo * n + hi] = true;
    }
    // transitive closure of the listed relations
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                if !leq[x * n + y] {
                    continue;
                }
                for z in 0..n {
                    if leq[y * n + z] && !leq[x * n + z] {
                        leq[x * n + z] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    FiniteResiduatedLattice::validate(RawAlgebra {
        names: names.iter().map(|s| s.to_string()).collect(),
        leq,
        mult: mult.to_vec(),
        unit,
        f_const,
        lres: None,
        rres: None,
    })
}

/// Named example algebras, revalidated on every call.
pub fn builtin(name: &str) -> Result<FiniteResiduatedLattice> {
    match name {
        "trivial" => build(&["e"], &[], &[0], 0, None),
        "chain2" => build(&["0", "e"], &[(0, 1)], &[0, 0, 0, 1], 1, None),
        // 3-chain with idempotent middle: x·y = x∧y
        "godel3" => build(
            &["0", "m", "e"],
            &[(0, 1), (1, 2)],
            &[0, 0, 0, 0, 1, 1, 0, 1, 2],
            2,
            None,
        ),
        // 3-chain with m·m = 0
        "lukasiewicz3" => build(
            &["0", "m", "e"],
            &[(0, 1), (1, 2)],
            &[0, 0, 0, 0, 0, 1, 0, 1, 2],
            2,
            None,
        ),
        // the 5-element integral algebra with two incomparable coatoms of
        // one-sided behavior: 0 < c < a,b < e
        "example5" => build(
            &["0", "a", "b", "c", "e"],
            &[(0, 3), (3, 1), (3, 2), (1, 4), (2, 4)],
            &[
                0, 0, 0, 0, 0, // 0
                0, 1, 0, 0, 1, // a
                0, 3, 2, 3, 2, // b
                0, 3, 0, 0, 3, // c
                0, 1, 2, 3, 4, // e
            ],
            4,
            None,
        ),
        // 3-chain b < e < t with absorbing bottom and idempotent top
        "nonintegral3" => build(
            &["b", "e", "t"],
            &[(0, 1), (1, 2)],
            &[0, 0, 0, 0, 1, 2, 0, 2, 2],
            1,
            None,
        ),
        "boolean4" => {
            let c2 = builtin("chain2")?;
            c2.direct_product(&c2)
        }
        _ => Err(Error::UnknownName(name.into())),
    }
}

pub fn builtin_names() -> &'static [&'static str] {
    &["trivial", "chain2", "godel3", "lukasiewicz3", "example5", "nonintegral3", "boolean4"]
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub is_gbl: bool,
    pub is_gmv: bool,
    pub is_lgroup: bool,
    pub is_integral: bool,
    /// invertible elements G(L)
    pub invertibles: Subset,
    /// integral elements I(L): x\e = e = e/x
    pub integrals: Subset,
}

fn holds(alg: &FiniteResiduatedLattice, name: &str) -> Result<bool> {
    Ok(check_law(alg, &catalog_law(name)?, None)?.holds())
}

pub fn classify(alg: &FiniteResiduatedLattice) -> Result<ClassReport> {
    let is_gbl = holds(alg, "GBL_L")? && holds(alg, "GBL_R")?;
    let gbl_quasi = holds(alg, "DIV_QL")? && holds(alg, "DIV_QR")?;
    assert_eq!(is_gbl, gbl_quasi, "divisibility identity and quasi-identity agree");
    let is_gmv = holds(alg, "GMV_L")? && holds(alg, "GMV_R")?;
    let gmv_quasi = holds(alg, "GMV_QL")? && holds(alg, "GMV_QR")?;
    assert_eq!(is_gmv, gmv_quasi, "GMV identity and quasi-identity agree");
    assert!(!is_gmv || is_gbl, "GMV implies GBL");
    let is_lgroup = holds(alg, "LGROUP_L")? && holds(alg, "LGROUP_R")?;
    assert!(!is_lgroup || alg.size() == 1, "no nontrivial finite algebra is invertible");
    let e = alg.unit();
    let invertibles: Subset = alg
        .elems()
        .filter(|&a| alg.mult(alg.rres(e, a), a) == e && alg.mult(a, alg.lres(a, e)) == e)
        .fold(0, |acc, a| acc | (1 << a));
    let integrals: Subset = alg
        .elems()
        .filter(|&a| alg.lres(a, e) == e && alg.rres(e, a) == e)
        .fold(0, |acc, a| acc | (1 << a));
    Ok(ClassReport {
        is_gbl,
        is_gmv,
        is_lgroup,
        is_integral: alg.flags().integral,
        invertibles,
        integrals,
    })
}

/// Checks the decomposition of a GBL-algebra into its invertible and
/// integral parts; for finite algebras the invertible part is trivial, so
/// the algebra coincides with its integral part.
pub fn gbl_decomposition_check(alg: &FiniteResiduatedLattice) -> Result<ClassReport> {
    let report = classify(alg)?;
    if !report.is_gbl {
        return Err(Error::NotGBL);
    }
    let e = alg.unit();
    for carrier in [report.invertibles, report.integrals] {
        assert!(carrier & (1 << e) != 0);
        for &x in &subset_elems(carrier) {
            for &y in &subset_elems(carrier) {
                for z in [alg.mult(x, y), alg.lres(x, y), alg.rres(x, y), alg.join(x, y), alg.meet(x, y)] {
                    assert!(carrier & (1 << z) != 0, "part is a subalgebra carrier");
                }
            }
        }
    }
    assert_eq!(report.invertibles & report.integrals, 1 << e, "G(L) ∩ I(L) = {{e}}");
    // (g,h) ↦ g·h is a bijection onto the carrier
    let mut seen: Subset = 0;
    let mut count = 0usize;
    for &g in &subset_elems(report.invertibles) {
        for &h in &subset_elems(report.integrals) {
            seen |= 1 << alg.mult(g, h);
            count += 1;
        }
    }
    assert_eq!(count, alg.size());
    assert_eq!(seen, (1 << alg.size()) - 1, "products cover the carrier");
    // finite ℓ-groups are trivial
    assert_eq!(report.invertibles, 1 << e);
    assert_eq!(report.integrals, (1 << alg.size()) - 1);
    Ok(report)
}

/// Is the lattice reduct distributive? (A consequence of being GBL.)
pub fn lattice_reduct_distributive(alg: &FiniteResiduatedLattice) -> bool {
    alg.elems().all(|x| {
        alg.elems().all(|y| {
            alg.elems()
                .all(|z| alg.meet(x, alg.join(y, z)) == alg.join(alg.meet(x, y), alg.meet(x, z)))
        })
    })
}

/// The two hyper-Archimedean conditions on the convex-subalgebra lattice:
/// (i) `C[a] ∨ a^⊥ = L` for every element, and (ii) the proper
/// meet-irreducible nodes form an antichain. They are equivalent and both
/// verdicts are returned.
pub fn martinez_conditions(alg: &FiniteResiduatedLattice) -> Result<(bool, bool)> {
    let lat = all_convex_subalgebras(alg)?;
    let k = lat.len();
    let mut cond_i = true;
    for a in alg.elems() {
        let ca = lat.node_of(convex_closure(alg, 1 << a)?.members).unwrap();
        let pa = lat.node_of(polar(alg, 1 << a)?.members).unwrap();
        if lat.join[ca * k + pa] != lat.top() {
            cond_i = false;
        }
    }
    let pr = primes(&lat);
    let cond_ii = pr
        .iter()
        .all(|&p| pr.iter().all(|&q| p == q || (!lat.le(p, q) && !lat.le(q, p))));
    assert_eq!(cond_i, cond_ii, "the two conditions are equivalent");
    Ok((cond_i, cond_ii))
}

// ---------------------------------------------------------------------------
// The parametric chain B_n
// ---------------------------------------------------------------------------

/// One element of the chain `B_n`: either the pair ⟨n·x, x⟩ with x ≤ 0
/// (upper part, containing the unit ⟨0,0⟩) or a nonnegative rational
/// (lower part). Every `Pos` lies below every `Neg`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BnValue {
    Pos(Rational64),
    Neg(Rational64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BnElement {
    pub n: u64,
    pub value: BnValue,
}

impl BnElement {
    pub fn neg(n: u64, x: Rational64) -> BnElement {
        assert!(x <= Rational64::zero());
        BnElement { n, value: BnValue::Neg(x) }
    }

    pub fn pos(n: u64, q: Rational64) -> BnElement {
        assert!(q >= Rational64::zero());
        BnElement { n, value: BnValue::Pos(q) }
    }

    pub fn unit(n: u64) -> BnElement {
        BnElement::neg(n, Rational64::zero())
    }
}

impl std::fmt::Display for BnElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = Rational64::from_integer(self.n as i64);
        match self.value {
            BnValue::Neg(x) => write!(f, "<{},{}>", n * x, x),
            BnValue::Pos(q) => write!(f, "{q}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BnOp {
    Mult,
    Lres,
    Rres,
    Join,
    Meet,
}

/// The chain evaluator; `opposite` swaps multiplication arguments and the
/// two residuals, yielding the mirror chain.
#[derive(Debug, Clone, Copy)]
pub struct BnChain {
    pub n: u64,
    pub opposite: bool,
}

impl BnChain {
    pub fn new(n: u64) -> BnChain {
        assert!(n >= 2);
        BnChain { n, opposite: false }
    }

    pub fn mirror(n: u64) -> BnChain {
        assert!(n >= 2);
        BnChain { n, opposite: true }
    }

    fn param(&self) -> Rational64 {
        Rational64::from_integer(self.n as i64)
    }

    fn check(&self, x: &BnElement) -> Result<()> {
        if x.n == self.n {
            Ok(())
        } else {
            Err(Error::ParameterMismatch(self.n, x.n))
        }
    }

    pub fn le(&self, x: &BnElement, y: &BnElement) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(match (x.value, y.value) {
            (BnValue::Pos(a), BnValue::Pos(b)) => a <= b,
            (BnValue::Neg(a), BnValue::Neg(b)) => a <= b,
            (BnValue::Pos(_), BnValue::Neg(_)) => true,
            (BnValue::Neg(_), BnValue::Pos(_)) => false,
        })
    }

    fn base_mult(&self, x: &BnElement, y: &BnElement) -> BnElement {
        let zero = Rational64::zero();
        let v = match (x.value, y.value) {
            (BnValue::Neg(a), BnValue::Neg(b)) => BnValue::Neg(a + b),
            (BnValue::Pos(a), BnValue::Neg(b)) => BnValue::Pos((a + b).max(zero)),
            (BnValue::Neg(b), BnValue::Pos(a)) => BnValue::Pos((self.param() * b + a).max(zero)),
            (BnValue::Pos(_), BnValue::Pos(_)) => BnValue::Pos(zero),
        };
        BnElement { n: self.n, value: v }
    }

    /// `x \ z`
    fn base_lres(&self, x: &BnElement, z: &BnElement) -> BnElement {
        let zero = Rational64::zero();
        let v = match (x.value, z.value) {
            (BnValue::Neg(a), BnValue::Neg(b)) => BnValue::Neg((b - a).min(zero)),
            (BnValue::Pos(_), BnValue::Neg(_)) => BnValue::Neg(zero),
            (BnValue::Neg(b), BnValue::Pos(a)) => BnValue::Pos(a - self.param() * b),
            (BnValue::Pos(a), BnValue::Pos(b)) => BnValue::Neg((b - a).min(zero)),
        };
        BnElement { n: self.n, value: v }
    }

    /// `z / y`
    fn base_rres(&self, z: &BnElement, y: &BnElement) -> BnElement {
        let zero = Rational64::zero();
        let v = match (z.value, y.value) {
            (BnValue::Neg(b), BnValue::Neg(a)) => BnValue::Neg((b - a).min(zero)),
            (BnValue::Neg(_), BnValue::Pos(_)) => BnValue::Neg(zero),
            (BnValue::Pos(a), BnValue::Neg(b)) => BnValue::Pos(a - b),
            (BnValue::Pos(b), BnValue::Pos(a)) => BnValue::Neg(((b - a) / self.param()).min(zero)),
        };
        BnElement { n: self.n, value: v }
    }

    pub fn op(&self, op: BnOp, x: &BnElement, y: &BnElement) -> Result<BnElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(match (op, self.opposite) {
            (BnOp::Mult, false) => self.base_mult(x, y),
            (BnOp::Mult, true) => self.base_mult(y, x),
            (BnOp::Lres, false) => self.base_lres(x, y),
            (BnOp::Lres, true) => self.base_rres(y, x),
            (BnOp::Rres, false) => self.base_rres(x, y),
            (BnOp::Rres, true) => self.base_lres(y, x),
            (BnOp::Join, _) => {
                if self.le(x, y)? {
                    *y
                } else {
                    *x
                }
            }
            (BnOp::Meet, _) => {
                if self.le(x, y)? {
                    *x
                } else {
                    *y
                }
            }
        })
    }

    pub fn pow(&self, x: &BnElement, k: usize) -> Result<BnElement> {
        let mut acc = BnElement::unit(self.n);
        for _ in 0..k {
            acc = self.op(BnOp::Mult, &acc, x)?;
        }
        Ok(acc)
    }

    /// `λ_u(x) = (u\xu) ∧ e` (top is the unit, so the meet is a no-op here).
    pub fn lam(&self, u: &BnElement, x: &BnElement) -> Result<BnElement> {
        let xu = self.op(BnOp::Mult, x, u)?;
        let r = self.op(BnOp::Lres, u, &xu)?;
        self.op(BnOp::Meet, &r, &BnElement::unit(self.n))
    }

    pub fn rho(&self, u: &BnElement, x: &BnElement) -> Result<BnElement> {
        let ux = self.op(BnOp::Mult, u, x)?;
        let r = self.op(BnOp::Rres, &ux, u)?;
        self.op(BnOp::Meet, &r, &BnElement::unit(self.n))
    }
}

pub fn bn_op(n: u64, op: BnOp, x: &BnElement, y: &BnElement) -> Result<BnElement> {
    BnChain::new(n).op(op, x, y)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BnReport {
    pub n: u64,
    /// `u\(g·u) = g^n` with g = ⟨−n,−1⟩ and u = n, and `g^n < g^{n−1}`.
    pub witness_ok: bool,
    /// Grading instances on the grid: `(x∧e)^n ≤ λ_y(x)` for all pairs,
    /// `x∧e ≤ ρ_y(x)` for x in the pair part, and `(x∧e)² ≤ ρ_y(x)` for
    /// rational x (exponent 1 fails there; see `rho_exponent_one_gap`).
    pub grading_ok: bool,
    /// Adjointness `x·y ≤ z ⇔ y ≤ x\z ⇔ x ≤ z/y` on grid triples.
    pub residuation_ok: bool,
}

/// Samples the chain at the grid points (negatives land in the upper pair
/// part, nonnegatives in the rational part) and verifies the grading
/// separation witness plus the residuation law, exactly.
pub fn bn_verify(n: u64, grid: &[Rational64]) -> Result<BnReport> {
    assert!(n >= 2 && !grid.is_empty());
    let chain = BnChain::new(n);
    let e = BnElement::unit(n);
    let zero = Rational64::zero();

    // separation witness
    let g = BnElement::neg(n, Rational64::from_integer(-1));
    let u = BnElement::pos(n, Rational64::from_integer(n as i64));
    let gu = chain.op(BnOp::Mult, &g, &u)?;
    let lhs = chain.op(BnOp::Lres, &u, &gu)?;
    let gn = chain.pow(&g, n as usize)?;
    let gn1 = chain.pow(&g, n as usize - 1)?;
    let witness_ok = lhs == gn && chain.le(&gn, &gn1)? && gn != gn1;
    // hence the (n−1,1) grading instance fails at (g,u)
    let lam_ug = chain.lam(&u, &g)?;
    assert!(!chain.le(&chain.pow(&chain.op(BnOp::Meet, &g, &e)?, n as usize - 1)?, &lam_ug)?);

    let mut sample: Vec<BnElement> = Vec::new();
    for &r in grid {
        if r <= zero {
            sample.push(BnElement::neg(n, r));
        }
        if r >= zero {
            sample.push(BnElement::pos(n, r));
        }
    }

    // λ needs exponent n everywhere. On the ρ side exponent 1 works for the
    // pair part of the carrier but not for rationals against pairs (the two
    // don't commute and the n-scaling favors λ), where exponent 2 is exact.
    let mut grading_ok = true;
    for x in &sample {
        let xe = chain.op(BnOp::Meet, x, &e)?;
        let xen = chain.pow(&xe, n as usize)?;
        for y in &sample {
            grading_ok &= chain.le(&xen, &chain.lam(y, x)?)?;
            let rho = chain.rho(y, x)?;
            match x.value {
                BnValue::Neg(_) => grading_ok &= chain.le(&xe, &rho)?,
                BnValue::Pos(_) => grading_ok &= chain.le(&chain.pow(&xe, 2)?, &rho)?,
            }
        }
    }

    let mut residuation_ok = true;
    for x in &sample {
        for y in &sample {
            let xy = chain.op(BnOp::Mult, x, y)?;
            for z in &sample {
                let direct = chain.le(&xy, z)?;
                residuation_ok &= direct == chain.le(y, &chain.op(BnOp::Lres, x, z)?)?;
                residuation_ok &= direct == chain.le(x, &chain.op(BnOp::Rres, z, y)?)?;
            }
        }
    }

    Ok(BnReport { n, witness_ok, grading_ok, residuation_ok })
}

/// Explicit witness that `x∧e ≤ ρ_y(x)` fails in the chain for rational x:
/// with x = n and y = ⟨−n,−1⟩ we get ρ_y(x) = 1 < n. (The pair part obeys
/// the exponent-1 bound; the rational part needs exponent 2.)
pub fn rho_exponent_one_gap(n: u64) -> Result<(BnElement, BnElement)> {
    let chain = BnChain::new(n);
    let x = BnElement::pos(n, Rational64::from_integer(n as i64));
    let y = BnElement::neg(n, Rational64::from_integer(-1));
    let rho = chain.rho(&y, &x)?;
    assert_eq!(rho, BnElement::pos(n, Rational64::from_integer(1)));
    assert!(!chain.le(&x, &rho)?);
    assert!(chain.le(&chain.pow(&x, 2)?, &rho)?);
    Ok((x, y))
}
