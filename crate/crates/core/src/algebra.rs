//! Finite residuated lattices as validated operation tables.
//!
//! Elements are dense indices `0..n-1`; every operation is a table lookup
//! precomputed at validation time.

use crate::{Error, Result};

/// Element index into the carrier.
pub type Elem = usize;

/// Carrier subset as a bitmask. Carriers are capped at 31 elements.
pub type Subset = u32;

pub const MAX_SIZE: usize = 31;

/// Kind of conjugation map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjKind {
    /// `λ_u(x) = (u\xu) ∧ e`
    Lambda,
    /// `ρ_u(x) = (ux/u) ∧ e`
    Rho,
    /// `λ*_u(x) = ((x\u)\u) ∧ e`
    LambdaStar,
    /// `ρ*_u(x) = (u/(u/x)) ∧ e`
    RhoStar,
}

/// Cached structural flags, computed at validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Flags {
    /// `x\e = e/x` for all x.
    pub e_cyclic: bool,
    /// The unit is the top element.
    pub integral: bool,
    pub commutative: bool,
    /// The order is total.
    pub chain: bool,
    /// A designated `f` equal to the bottom element.
    pub bounded: bool,
}

/// Unvalidated input tables for [`FiniteResiduatedLattice::validate`].
#[derive(Debug, Clone)]
pub struct RawAlgebra {
    pub names: Vec<String>,
    /// Row-major `n*n`: `leq[x*n+y]` iff `x <= y`.
    pub leq: Vec<bool>,
    /// Row-major `n*n`: `mult[x*n+y] = x*y`.
    pub mult: Vec<Elem>,
    pub unit: Elem,
    pub f_const: Option<Elem>,
    /// `lres[x*n+z] = x\z`; derived from order and mult when absent.
    pub lres: Option<Vec<Elem>>,
    /// `rres[z*n+y] = z/y`; derived when absent.
    pub rres: Option<Vec<Elem>>,
}

/// A validated finite residuated lattice. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteResiduatedLattice {
    size: usize,
    names: Vec<String>,
    leq: Vec<bool>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    mult: Vec<Elem>,
    lres: Vec<Elem>,
    rres: Vec<Elem>,
    unit: Elem,
    f_const: Option<Elem>,
    flags: Flags,
}

impl FiniteResiduatedLattice {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name_of(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn unit(&self) -> Elem {
        self.unit
    }

    pub fn f_const(&self) -> Option<Elem> {
        self.f_const
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    #[inline]
    pub fn le(&self, x: Elem, y: Elem) -> bool {
        self.leq[x * self.size + y]
    }

    #[inline]
    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join[x * self.size + y]
    }

    #[inline]
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x * self.size + y]
    }

    #[inline]
    pub fn mult(&self, x: Elem, y: Elem) -> Elem {
        self.mult[x * self.size + y]
    }

    /// `x\z`
    #[inline]
    pub fn lres(&self, x: Elem, z: Elem) -> Elem {
        self.lres[x * self.size + z]
    }

    /// `z/y`
    #[inline]
    pub fn rres(&self, z: Elem, y: Elem) -> Elem {
        self.rres[z * self.size + y]
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> {
        0..self.size
    }

    pub fn bottom(&self) -> Elem {
        (0..self.size)
            .find(|&b| (0..self.size).all(|x| self.le(b, x)))
            .expect("finite lattice has a bottom")
    }

    pub fn top(&self) -> Elem {
        (0..self.size)
            .find(|&t| (0..self.size).all(|x| self.le(x, t)))
            .expect("finite lattice has a top")
    }

    /// `|x| = x ∧ (e/x) ∧ e`
    pub fn abs(&self, x: Elem) -> Elem {
        let e = self.unit;
        self.meet(self.meet(x, self.rres(e, x)), e)
    }

    /// `x^k` with `x^0 = e`.
    pub fn pow(&self, x: Elem, k: usize) -> Elem {
        let mut acc = self.unit;
        for _ in 0..k {
            acc = self.mult(acc, x);
        }
        acc
    }

    pub fn conjugate(&self, kind: ConjKind, u: Elem, x: Elem) -> Elem {
        let e = self.unit;
        let v = match kind {
            ConjKind::Lambda => self.lres(u, self.mult(x, u)),
            ConjKind::Rho => self.rres(self.mult(u, x), u),
            ConjKind::LambdaStar => self.lres(self.lres(x, u), u),
            ConjKind::RhoStar => self.rres(u, self.rres(u, x)),
        };
        self.meet(v, e)
    }

    /// Negative cone `{x : x <= e}`. Returns the cone together with the list
    /// of original indices of its carrier (in index order).
    pub fn negative_cone(&self) -> Result<(FiniteResiduatedLattice, Vec<Elem>)> {
        let e = self.unit;
        let carrier: Vec<Elem> = self.elems().filter(|&x| self.le(x, e)).collect();
        let pos: Vec<Option<usize>> = {
            let mut p = vec![None; self.size];
            for (i, &x) in carrier.iter().enumerate() {
                p[x] = Some(i);
            }
            p
        };
        let m = carrier.len();
        let at = |x: Elem| pos[x].expect("negative cone is closed under clipped ops");
        let mut leq = vec![false; m * m];
        let mut mult = vec![0; m * m];
        let mut lres = vec![0; m * m];
        let mut rres = vec![0; m * m];
        for (i, &x) in carrier.iter().enumerate() {
            for (j, &y) in carrier.iter().enumerate() {
                leq[i * m + j] = self.le(x, y);
                mult[i * m + j] = at(self.mult(x, y));
                lres[i * m + j] = at(self.meet(self.lres(x, y), e));
                rres[i * m + j] = at(self.meet(self.rres(x, y), e));
            }
        }
        let raw = RawAlgebra {
            names: carrier.iter().map(|&x| self.names[x].clone()).collect(),
            leq,
            mult,
            unit: at(e),
            f_const: self.f_const.and_then(|f| pos[f]),
            lres: Some(lres),
            rres: Some(rres),
        };
        Ok((FiniteResiduatedLattice::validate(raw)?, carrier))
    }

    /// Componentwise direct product. Element `(x, y)` maps to `x*other.size + y`.
    pub fn direct_product(&self, other: &FiniteResiduatedLattice) -> Result<FiniteResiduatedLattice> {
        let (n1, n2) = (self.size, other.size);
        let n = n1 * n2;
        let enc = |x: Elem, y: Elem| x * n2 + y;
        let mut leq = vec![false; n * n];
        let mut mult = vec![0; n * n];
        let mut lres = vec![0; n * n];
        let mut rres = vec![0; n * n];
        let mut names = vec![String::new(); n];
        for x1 in 0..n1 {
            for y1 in 0..n2 {
                let a = enc(x1, y1);
                names[a] = format!("({},{})", self.names[x1], other.names[y1]);
                for x2 in 0..n1 {
                    for y2 in 0..n2 {
                        let b = enc(x2, y2);
                        leq[a * n + b] = self.le(x1, x2) && other.le(y1, y2);
                        mult[a * n + b] = enc(self.mult(x1, x2), other.mult(y1, y2));
                        lres[a * n + b] = enc(self.lres(x1, x2), other.lres(y1, y2));
                        rres[a * n + b] = enc(self.rres(x1, x2), other.rres(y1, y2));
                    }
                }
            }
        }
        let raw = RawAlgebra {
            names,
            leq,
            mult,
            unit: enc(self.unit, other.unit),
            f_const: match (self.f_const, other.f_const) {
                (Some(f1), Some(f2)) => Some(enc(f1, f2)),
                _ => None,
            },
            lres: Some(lres),
            rres: Some(rres),
        };
        FiniteResiduatedLattice::validate(raw)
    }

    /// Opposite algebra: multiplication arguments swapped, residuals swapped.
    pub fn opposite(&self) -> FiniteResiduatedLattice {
        let n = self.size;
        let mut out = self.clone();
        for x in 0..n {
            for y in 0..n {
                out.mult[x * n + y] = self.mult[y * n + x];
                out.lres[x * n + y] = self.rres[y * n + x];
                out.rres[x * n + y] = self.lres[y * n + x];
            }
        }
        out.flags = compute_flags(&out);
        out
    }

    /// Relabel elements by a permutation `perm`, where element `x` becomes
    /// `perm[x]`.
    pub fn relabel(&self, perm: &[Elem]) -> FiniteResiduatedLattice {
        let n = self.size;
        let mut inv = vec![0; n];
        for (x, &px) in perm.iter().enumerate() {
            inv[px] = x;
        }
        let mut out = self.clone();
        for a in 0..n {
            for b in 0..n {
                let (x, y) = (inv[a], inv[b]);
                out.leq[a * n + b] = self.leq[x * n + y];
                out.join[a * n + b] = perm[self.join[x * n + y]];
                out.meet[a * n + b] = perm[self.meet[x * n + y]];
                out.mult[a * n + b] = perm[self.mult[x * n + y]];
                out.lres[a * n + b] = perm[self.lres[x * n + y]];
                out.rres[a * n + b] = perm[self.rres[x * n + y]];
            }
        }
        for x in 0..n {
            out.names[perm[x]] = self.names[x].clone();
        }
        out.unit = perm[self.unit];
        out.f_const = self.f_const.map(|f| perm[f]);
        out
    }

    /// Validates raw tables, deriving residuals when absent.
    pub fn validate(raw: RawAlgebra) -> Result<FiniteResiduatedLattice> {
        let n = raw.names.len();
        if n == 0 || n > MAX_SIZE {
            return Err(Error::InconsistentTables(format!(
                "carrier size {n} outside 1..={MAX_SIZE}"
            )));
        }
        if raw.leq.len() != n * n || raw.mult.len() != n * n {
            return Err(Error::InconsistentTables("table dimensions".into()));
        }
        for t in raw.mult.iter() {
            if *t >= n {
                return Err(Error::InconsistentTables("mult entry out of range".into()));
            }
        }
        if raw.unit >= n {
            return Err(Error::InconsistentTables("unit out of range".into()));
        }
        {
            let mut sorted = raw.names.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != n {
                return Err(Error::InconsistentTables("duplicate element names".into()));
            }
        }

        check_partial_order(&raw.leq, n)?;
        let (join, meet) = lattice_tables(&raw.leq, n)?;

        // Monoid laws.
        let mult = &raw.mult;
        for x in 0..n {
            if mult[raw.unit * n + x] != x || mult[x * n + raw.unit] != x {
                return Err(Error::UnitNotIdentity(x));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if mult[mult[x * n + y] * n + z] != mult[x * n + mult[y * n + z]] {
                        return Err(Error::NotAssociative(x, y, z));
                    }
                }
            }
        }

        let (dlres, drres) = derive_residuals(&raw.leq, mult, n)?;
        // Residuals are unique, so supplied tables either match the derived
        // ones or violate the residuation law somewhere.
        if raw.lres.as_ref().is_some_and(|t| t != &dlres)
            || raw.rres.as_ref().is_some_and(|t| t != &drres)
        {
            let lr = raw.lres.as_ref().unwrap_or(&dlres);
            let rr = raw.rres.as_ref().unwrap_or(&drres);
            let le = |x: Elem, y: Elem| raw.leq[x * n + y];
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let p = le(mult[x * n + y], z);
                        if p != le(y, lr[x * n + z]) || p != le(x, rr[z * n + y]) {
                            return Err(Error::ResiduationFails(x, y, z));
                        }
                    }
                }
            }
            return Err(Error::InconsistentTables(
                "supplied residual tables disagree with the derived ones".into(),
            ));
        }
        let (lres, rres) = (dlres, drres);

        let le = |x: Elem, y: Elem| raw.leq[x * n + y];
        // Residuation law, the defining equivalence.
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let p = le(mult[x * n + y], z);
                    let q = le(y, lres[x * n + z]);
                    let r = le(x, rres[z * n + y]);
                    if p != q || q != r {
                        return Err(Error::ResiduationFails(x, y, z));
                    }
                }
            }
        }
        // Join preservation of mult in each argument.
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let j = join[x * n + y];
                    if mult[j * n + z] != join[mult[x * n + z] * n + mult[y * n + z]]
                        || mult[z * n + j] != join[mult[z * n + x] * n + mult[z * n + y]]
                    {
                        return Err(Error::InconsistentTables(format!(
                            "multiplication does not preserve joins at ({x},{y},{z})"
                        )));
                    }
                }
            }
        }

        let mut alg = FiniteResiduatedLattice {
            size: n,
            names: raw.names,
            leq: raw.leq,
            join,
            meet,
            mult: raw.mult,
            lres,
            rres,
            unit: raw.unit,
            f_const: raw.f_const,
            flags: Flags {
                e_cyclic: false,
                integral: false,
                commutative: false,
                chain: false,
                bounded: false,
            },
        };
        alg.flags = compute_flags(&alg);
        check_derived_laws(&alg)?;
        Ok(alg)
    }
}

fn compute_flags(alg: &FiniteResiduatedLattice) -> Flags {
    let n = alg.size;
    let e = alg.unit;
    Flags {
        e_cyclic: (0..n).all(|x| alg.lres(x, e) == alg.rres(e, x)),
        integral: (0..n).all(|x| alg.le(x, e)),
        commutative: (0..n).all(|x| (0..n).all(|y| alg.mult(x, y) == alg.mult(y, x))),
        chain: (0..n).all(|x| (0..n).all(|y| alg.le(x, y) || alg.le(y, x))),
        bounded: alg.f_const == Some(alg.bottom()),
    }
}

pub fn check_partial_order(leq: &[bool], n: usize) -> Result<()> {
    let le = |x: usize, y: usize| leq[x * n + y];
    for x in 0..n {
        if !le(x, x) {
            return Err(Error::NotAPartialOrder(format!("not reflexive at {x}")));
        }
        for y in 0..n {
            if x != y && le(x, y) && le(y, x) {
                return Err(Error::NotAPartialOrder(format!(
                    "not antisymmetric at ({x},{y})"
                )));
            }
            for z in 0..n {
                if le(x, y) && le(y, z) && !le(x, z) {
                    return Err(Error::NotAPartialOrder(format!(
                        "not transitive at ({x},{y},{z})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Least-upper-bound and greatest-lower-bound tables of a partial order,
/// failing if some pair lacks one.
pub fn lattice_tables(leq: &[bool], n: usize) -> Result<(Vec<Elem>, Vec<Elem>)> {
    let le = |x: usize, y: usize| leq[x * n + y];
    let mut join = vec![0; n * n];
    let mut meet = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let ub: Vec<Elem> = (0..n).filter(|&u| le(x, u) && le(y, u)).collect();
            match ub.iter().copied().find(|&u| ub.iter().all(|&v| le(u, v))) {
                Some(u) => join[x * n + y] = u,
                None => return Err(Error::NotALattice(x, y, "join")),
            }
            let lb: Vec<Elem> = (0..n).filter(|&l| le(l, x) && le(l, y)).collect();
            match lb.iter().copied().find(|&l| lb.iter().all(|&m| le(m, l))) {
                Some(l) => meet[x * n + y] = l,
                None => return Err(Error::NotALattice(x, y, "meet")),
            }
        }
    }
    Ok((join, meet))
}

/// Derives both residual tables from an order and a monoid table:
/// `x\z = max{y : x*y <= z}` and `z/y = max{x : x*y <= z}`.
pub fn derive_residuals(leq: &[bool], mult: &[Elem], n: usize) -> Result<(Vec<Elem>, Vec<Elem>)> {
    let le = |x: usize, y: usize| leq[x * n + y];
    let mut lres = vec![0; n * n];
    let mut rres = vec![0; n * n];
    for x in 0..n {
        for z in 0..n {
            let cand: Vec<Elem> = (0..n).filter(|&y| le(mult[x * n + y], z)).collect();
            match cand.iter().copied().find(|&y| cand.iter().all(|&w| le(w, y))) {
                Some(y) => lres[x * n + z] = y,
                None => return Err(Error::NoMaximum(x, z)),
            }
        }
    }
    for z in 0..n {
        for y in 0..n {
            let cand: Vec<Elem> = (0..n).filter(|&x| le(mult[x * n + y], z)).collect();
            match cand.iter().copied().find(|&x| cand.iter().all(|&w| le(w, x))) {
                Some(x) => rres[z * n + y] = x,
                None => return Err(Error::NoMaximum(y, z)),
            }
        }
    }
    Ok((lres, rres))
}

/// The derived laws that every residuated lattice satisfies, checked
/// exhaustively (with mirror images).
fn check_derived_laws(alg: &FiniteResiduatedLattice) -> Result<()> {
    let n = alg.size;
    let bad = |what: &str| Err(Error::InconsistentTables(format!("derived law fails: {what}")));
    for x in 0..n {
        // x(x\x) = x and its mirror; (x\x)^2 = x\x and its mirror.
        if alg.mult(x, alg.lres(x, x)) != x || alg.mult(alg.rres(x, x), x) != x {
            return bad("x(x\\x) = x");
        }
        let d = alg.lres(x, x);
        let d2 = alg.rres(x, x);
        if alg.mult(d, d) != d || alg.mult(d2, d2) != d2 {
            return bad("(x\\x)^2 = x\\x");
        }
        for y in 0..n {
            for z in 0..n {
                // (x\y)z <= x\yz; z(y/x) <= zy/x
                if !alg.le(alg.mult(alg.lres(x, y), z), alg.lres(x, alg.mult(y, z))) {
                    return bad("(x\\y)z <= x\\yz");
                }
                if !alg.le(alg.mult(z, alg.rres(y, x)), alg.rres(alg.mult(z, y), x)) {
                    return bad("z(y/x) <= zy/x");
                }
                // x\y <= zx\zy; y/x <= yz/xz
                if !alg.le(alg.lres(x, y), alg.lres(alg.mult(z, x), alg.mult(z, y))) {
                    return bad("x\\y <= zx\\zy");
                }
                if !alg.le(alg.rres(y, x), alg.rres(alg.mult(y, z), alg.mult(x, z))) {
                    return bad("y/x <= yz/xz");
                }
                // (x\y)(y\z) <= x\z; (z/y)(y/x) <= z/x
                if !alg.le(alg.mult(alg.lres(x, y), alg.lres(y, z)), alg.lres(x, z)) {
                    return bad("(x\\y)(y\\z) <= x\\z");
                }
                if !alg.le(alg.mult(alg.rres(z, y), alg.rres(y, x)), alg.rres(z, x)) {
                    return bad("(z/y)(y/x) <= z/x");
                }
                // xy\z = y\(x\z); z/xy = (z/y)/x
                if alg.lres(alg.mult(x, y), z) != alg.lres(y, alg.lres(x, z)) {
                    return bad("xy\\z = y\\(x\\z)");
                }
                if alg.rres(z, alg.mult(x, y)) != alg.rres(alg.rres(z, y), x) {
                    return bad("z/xy = (z/y)/x");
                }
                // x\(y/z) = (x\y)/z
                if alg.lres(x, alg.rres(y, z)) != alg.rres(alg.lres(x, y), z) {
                    return bad("x\\(y/z) = (x\\y)/z");
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::builtin;

    #[test]
    fn trivial_algebra_all_flags() {
        let alg = builtin("trivial").unwrap();
        let f = alg.flags();
        assert!(f.e_cyclic && f.integral && f.commutative && f.chain);
    }

    #[test]
    fn example5_flags_and_residuals() {
        let alg = builtin("example5").unwrap();
        let f = alg.flags();
        assert!(f.integral);
        assert!(f.e_cyclic);
        assert!(!f.commutative);
        assert!(!f.chain);
        // b\0 = 0
        let b = alg.names().iter().position(|s| s == "b").unwrap();
        let zero = alg.names().iter().position(|s| s == "0").unwrap();
        assert_eq!(alg.lres(b, zero), zero);
    }

    #[test]
    fn nonintegral_chain_valid() {
        let alg = builtin("nonintegral3").unwrap();
        assert!(!alg.flags().integral);
        assert!(alg.flags().e_cyclic);
        // negative cone is the 2-chain below e
        let (cone, carrier) = alg.negative_cone().unwrap();
        assert_eq!(cone.size(), 2);
        assert_eq!(carrier.len(), 2);
    }

    #[test]
    fn two_chain_residual_from_unit_row() {
        // 2-chain 0 < e with 0*0 = 0: 0\0 = e.
        let alg = builtin("chain2").unwrap();
        assert_eq!(alg.lres(0, 0), alg.unit());
    }

    #[test]
    fn lukasiewicz_residual_by_scan() {
        let alg = builtin("lukasiewicz3").unwrap();
        let m = 1; // 0 < m < e
        assert_eq!(alg.lres(m, 0), m);
    }

    #[test]
    fn conjugations_on_example5() {
        let alg = builtin("example5").unwrap();
        let by = |s: &str| alg.names().iter().position(|n| n == s).unwrap();
        let (zero, a, b) = (by("0"), by("a"), by("b"));
        assert_eq!(alg.conjugate(ConjKind::Lambda, b, a), zero);
        assert_eq!(alg.conjugate(ConjKind::Rho, a, b), zero);
        // unit conjugation is x ∧ e
        for x in alg.elems() {
            assert_eq!(
                alg.conjugate(ConjKind::Lambda, alg.unit(), x),
                alg.meet(x, alg.unit())
            );
        }
    }

    #[test]
    fn abs_laws_hold() {
        for name in ["chain2", "godel3", "lukasiewicz3", "example5", "nonintegral3"] {
            let alg = builtin(name).unwrap();
            let e = alg.unit();
            for x in alg.elems() {
                let a = alg.abs(x);
                assert!(alg.le(a, x));
                assert!(alg.le(x, alg.lres(a, e)));
                assert_eq!(alg.le(x, e), a == x);
                assert_eq!(a == e, x == e);
            }
        }
    }

    #[test]
    fn product_sizes_and_unit() {
        let g = builtin("godel3").unwrap();
        let p = g.direct_product(&g).unwrap();
        assert_eq!(p.size(), 9);
        assert_eq!(p.unit(), g.unit() * 3 + g.unit());
    }

    #[test]
    fn negative_powers_product_inequality() {
        // Lemma-style product inequality for tuples of negative elements up to length 4.
        for name in ["godel3", "lukasiewicz3", "example5", "nonintegral3"] {
            let alg = builtin(name).unwrap();
            let e = alg.unit();
            let neg: Vec<Elem> = alg.elems().filter(|&x| alg.le(x, e)).collect();
            for &y in &neg {
                for len in 1..=4usize {
                    let mut idx = vec![0usize; len];
                    loop {
                        let xs: Vec<Elem> = idx.iter().map(|&i| neg[i]).collect();
                        let lhs = xs.iter().fold(e, |acc, &x| alg.mult(acc, alg.join(x, y)));
                        let rhs = alg.join(xs.iter().fold(e, |acc, &x| alg.mult(acc, x)), y);
                        assert!(alg.le(lhs, rhs));
                        let mut k = 0;
                        loop {
                            if k == len {
                                break;
                            }
                            idx[k] += 1;
                            if idx[k] < neg.len() {
                                break;
                            }
                            idx[k] = 0;
                            k += 1;
                        }
                        if k == len {
                            break;
                        }
                    }
                }
            }
        }
    }
}
