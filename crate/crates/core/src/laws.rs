//! Named catalog of the identities and quasi-identities used throughout the
//! toolkit: prelinearity, the semilinearity axioms and their star variants,
//! Hamiltonian grading laws, GBL/GMV forms, and related laws.

use crate::term::*;
use crate::{Error, Result};

fn x() -> Term {
    var(0)
}
fn y() -> Term {
    var(1)
}
fn u() -> Term {
    var(2)
}
fn v() -> Term {
    var(3)
}

/// `(x∧e)^m <= λ_y(x)` — the left Hamiltonian grading law.
pub fn ham1_left(m: usize) -> Law {
    Law::inequality(
        &format!("HAM1_L({m})"),
        power(neg_part(x()), m),
        lam(y(), x()),
        &["x", "y"],
    )
}

/// `(x∧e)^n <= ρ_y(x)` — the right Hamiltonian grading law.
pub fn ham1_right(n: usize) -> Law {
    Law::inequality(
        &format!("HAM1_R({n})"),
        power(neg_part(x()), n),
        rho(y(), x()),
        &["x", "y"],
    )
}

/// `|x|^m <= λ_y(x)` — absolute-value variant.
pub fn ham2_left(m: usize) -> Law {
    Law::inequality(&format!("HAM2_L({m})"), power(abs(x()), m), lam(y(), x()), &["x", "y"])
}

/// `|x|^n <= ρ_y(x)` — absolute-value variant.
pub fn ham2_right(n: usize) -> Law {
    Law::inequality(&format!("HAM2_R({n})"), power(abs(x()), n), rho(y(), x()), &["x", "y"])
}

/// Star-conjugation variants of the grading laws.
pub fn ham1_star_left(m: usize) -> Law {
    Law::inequality(
        &format!("HAM1S_L({m})"),
        power(neg_part(x()), m),
        lam_star(y(), x()),
        &["x", "y"],
    )
}

pub fn ham1_star_right(n: usize) -> Law {
    Law::inequality(
        &format!("HAM1S_R({n})"),
        power(neg_part(x()), n),
        rho_star(y(), x()),
        &["x", "y"],
    )
}

/// Kühr's 5-variable implicational identity axiomatizing semilinearity for
/// integral residuated lattices.
pub fn kuhr_identity() -> Law {
    let (tx, ty, tu, tz, tw) = (var(0), var(1), var(2), var(3), var(4));
    let inner = lres(lres(lres(ty.clone(), tx.clone()), tz.clone()), tz); // ((y\x)\z)\z
    let mid = rres(tw.clone(), rres(tw, inner)); // w/(w/inner)
    let lhs = lres(
        lres(lres(tx, ty), tu.clone()),
        lres(lres(mid, tu.clone()), tu),
    );
    Law::identity("KUHR_IRL", lhs, e(), &["x", "y", "u", "z", "w"])
}

/// The full immutable catalog, keyed by stable names.
pub fn law_catalog() -> Vec<Law> {
    let xy_join = join(x(), y());
    vec![
        Law::identity("ECYC", lres(x(), e()), rres(e(), x()), &["x"]),
        Law::identity(
            "LP",
            join(neg_part(lres(x(), y())), neg_part(lres(y(), x()))),
            e(),
            &["x", "y"],
        ),
        Law::identity(
            "RP",
            join(neg_part(rres(y(), x())), neg_part(rres(x(), y()))),
            e(),
            &["x", "y"],
        ),
        // Semilinearity axioms
        Law::identity(
            "SEMI_EQ1",
            join(
                lam(u(), lres(xy_join.clone(), x())),
                rho(v(), lres(xy_join.clone(), y())),
            ),
            e(),
            &["x", "y", "u", "v"],
        ),
        Law::identity(
            "SEMI_EQ1B",
            join(
                lam(u(), rres(x(), xy_join.clone())),
                rho(v(), rres(y(), xy_join.clone())),
            ),
            e(),
            &["x", "y", "u", "v"],
        ),
        Law::quasi(
            "SEMI_EQ2",
            vec![(join(x(), y()), e())],
            join(lam(u(), x()), rho(v(), y())),
            e(),
            &["x", "y", "u", "v"],
        ),
        Law::identity(
            "SEMI_EQ3A",
            join(
                lam_star(u(), lres(xy_join.clone(), x())),
                rho_star(v(), lres(xy_join.clone(), y())),
            ),
            e(),
            &["x", "y", "u", "v"],
        ),
        Law::identity(
            "SEMI_EQ3B",
            join(
                lam_star(u(), rres(x(), xy_join.clone())),
                rho_star(v(), rres(y(), xy_join.clone())),
            ),
            e(),
            &["x", "y", "u", "v"],
        ),
        Law::quasi(
            "SEMI_EQ4",
            vec![(join(x(), y()), e())],
            join(lam_star(u(), x()), rho_star(v(), y())),
            e(),
            &["x", "y", "u", "v"],
        ),
        // Alternative identity pairs usable in place of the axioms above
        Law::identity(
            "SEMI_ALT_L",
            join(
                lam(u(), neg_part(lres(y(), x()))),
                rho(v(), neg_part(lres(x(), y()))),
            ),
            e(),
            &["x", "y", "u", "v"],
        ),
        Law::identity(
            "SEMI_ALT_R",
            join(
                lam(u(), neg_part(rres(x(), y()))),
                rho(v(), neg_part(rres(y(), x()))),
            ),
            e(),
            &["x", "y", "u", "v"],
        ),
        Law::identity(
            "SEMI_ALT_L_STAR",
            join(
                lam_star(u(), neg_part(lres(y(), x()))),
                rho_star(v(), neg_part(lres(x(), y()))),
            ),
            e(),
            &["x", "y", "u", "v"],
        ),
        Law::identity(
            "SEMI_ALT_R_STAR",
            join(
                lam_star(u(), neg_part(rres(x(), y()))),
                rho_star(v(), neg_part(rres(y(), x()))),
            ),
            e(),
            &["x", "y", "u", "v"],
        ),
        kuhr_identity(),
        // Weakly Abelian: (x∧e)² y <= yx
        Law::inequality(
            "WEAKLY_ABELIAN",
            mult(power(neg_part(x()), 2), y()),
            mult(y(), x()),
            &["x", "y"],
        ),
        Law::identity(
            "SQUARE_JOIN",
            join(power(x(), 2), power(y(), 2)),
            power(join(x(), y()), 2),
            &["x", "y"],
        ),
        // GMV and GBL identity forms
        Law::identity("GMV_L", rres(x(), neg_part(lres(y(), x()))), join(x(), y()), &["x", "y"]),
        Law::identity("GMV_R", lres(neg_part(rres(x(), y())), x()), join(x(), y()), &["x", "y"]),
        Law::identity("GBL_L", mult(neg_part(rres(x(), y())), y()), meet(x(), y()), &["x", "y"]),
        Law::identity("GBL_R", mult(y(), neg_part(lres(y(), x()))), meet(x(), y()), &["x", "y"]),
        // quasi-identity forms
        Law::quasi(
            "GMV_QL",
            vec![(meet(x(), y()), x())],
            rres(x(), lres(y(), x())),
            y(),
            &["x", "y"],
        ),
        Law::quasi(
            "GMV_QR",
            vec![(meet(x(), y()), x())],
            lres(rres(x(), y()), x()),
            y(),
            &["x", "y"],
        ),
        Law::quasi(
            "DIV_QL",
            vec![(meet(x(), y()), x())],
            mult(rres(x(), y()), y()),
            x(),
            &["x", "y"],
        ),
        Law::quasi(
            "DIV_QR",
            vec![(meet(x(), y()), x())],
            mult(y(), lres(y(), x())),
            x(),
            &["x", "y"],
        ),
        // invertibility of every element
        Law::identity("LGROUP_L", mult(rres(e(), x()), x()), e(), &["x"]),
        Law::identity("LGROUP_R", mult(x(), lres(x(), e())), e(), &["x"]),
    ]
}

/// Looks up a catalog law by name. Parametric names `HAM1(m,n)`, `HAM2(m,n)`
/// and `HAM1S(m,n)` yield the left grading law at `m` (pair the right one via
/// the `*_right` constructors or the `_L`/`_R` names).
pub fn catalog_law(name: &str) -> Result<Law> {
    if let Some(law) = law_catalog().into_iter().find(|l| l.name.as_deref() == Some(name)) {
        return Ok(law);
    }
    if let Some((base, args)) = name.split_once('(') {
        let args = args.strip_suffix(')').ok_or_else(|| Error::UnknownLaw(name.into()))?;
        let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| Error::UnknownLaw(name.into()));
        match base {
            "HAM1_L" => return Ok(ham1_left(parse(args)?)),
            "HAM1_R" => return Ok(ham1_right(parse(args)?)),
            "HAM2_L" => return Ok(ham2_left(parse(args)?)),
            "HAM2_R" => return Ok(ham2_right(parse(args)?)),
            "HAM1S_L" => return Ok(ham1_star_left(parse(args)?)),
            "HAM1S_R" => return Ok(ham1_star_right(parse(args)?)),
            _ => {}
        }
    }
    Err(Error::UnknownLaw(name.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::builtin;
    use crate::term::{check_law, LawVerdict};

    #[test]
    fn lookup_lp_two_vars() {
        let lp = catalog_law("LP").unwrap();
        assert_eq!(lp.num_vars(), 2);
    }

    #[test]
    fn kuhr_needs_five_vars() {
        let k = catalog_law("KUHR_IRL").unwrap();
        assert_eq!(k.num_vars(), 5);
        let alg = builtin("chain2").unwrap();
        assert!(check_law(&alg, &k, None).is_err());
        assert!(check_law(&alg, &k, Some(5)).unwrap().holds());
    }

    #[test]
    fn ham_1_1_holds_on_commutative() {
        // λ_y(x) >= x∧e when xy = yx
        let alg = builtin("godel3").unwrap();
        assert!(check_law(&alg, &ham1_left(1), None).unwrap().holds());
        assert!(check_law(&alg, &ham1_right(1), None).unwrap().holds());
    }

    #[test]
    fn lp_holds_on_chains() {
        for name in ["chain2", "godel3", "lukasiewicz3", "nonintegral3"] {
            let alg = builtin(name).unwrap();
            assert!(check_law(&alg, &catalog_law("LP").unwrap(), None).unwrap().holds());
        }
    }

    #[test]
    fn square_join_holds_on_example5() {
        let alg = builtin("example5").unwrap();
        assert!(check_law(&alg, &catalog_law("SQUARE_JOIN").unwrap(), None)
            .unwrap()
            .holds());
    }

    #[test]
    fn semi_eq1_fails_on_example5() {
        let alg = builtin("example5").unwrap();
        match check_law(&alg, &catalog_law("SEMI_EQ1").unwrap(), None).unwrap() {
            LawVerdict::Counterexample(_) => {}
            LawVerdict::Holds => panic!("example5 is not semilinear"),
        }
    }

    #[test]
    fn all_catalog_names_resolve() {
        for law in law_catalog() {
            let name = law.name.clone().unwrap();
            assert_eq!(catalog_law(&name).unwrap(), law);
        }
    }
}
