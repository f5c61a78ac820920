//! Structured JSON reports and DOT export of cover diagrams.

use serde::{Deserialize, Serialize};

use crate::algebra::FiniteResiduatedLattice;
use crate::convexity::{all_convex_subalgebras, subset_elems, ConvLattice};
use crate::format::cover_pairs;
use crate::laws::catalog_law;
use crate::normality::{all_normal, hamiltonian_degree, is_semilinear, SemiRoute};
use crate::spectrum::{annotate, conv_as_lattice};
use crate::structures::classify;
use crate::term::{check_law, LawVerdict};
use crate::Result;

/// Laws whose verdicts every report carries.
pub const REPORT_LAWS: &[&str] = &[
    "ECYC",
    "LP",
    "RP",
    "SEMI_EQ1",
    "GBL_L",
    "GBL_R",
    "GMV_L",
    "GMV_R",
    "SQUARE_JOIN",
    "WEAKLY_ABELIAN",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagsReport {
    pub e_cyclic: bool,
    pub integral: bool,
    pub commutative: bool,
    pub chain: bool,
    pub bounded: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvNodeReport {
    pub members: Vec<String>,
    pub prime: bool,
    pub minimal_prime: bool,
    pub polar: bool,
    pub normal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSection {
    pub gbl: bool,
    pub gmv: bool,
    pub lgroup: bool,
    pub integral: bool,
    pub invertibles: Vec<String>,
    pub integrals: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemilinearSection {
    pub semilinear: bool,
    pub route: String,
    pub decomposition: Option<Vec<Vec<String>>>,
    pub counterexample: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawResult {
    pub name: String,
    pub holds: bool,
    pub counterexample: Option<Vec<String>>,
}

/// Stable-schema structured report over one algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub name: String,
    pub size: usize,
    pub elements: Vec<String>,
    pub unit: String,
    pub flags: FlagsReport,
    pub conv_nodes: Vec<ConvNodeReport>,
    /// Cover edges of the convex-subalgebra lattice, as node index pairs.
    pub conv_edges: Vec<(usize, usize)>,
    /// For each element, the member lists of its values.
    pub values: Vec<Vec<Vec<String>>>,
    pub class: ClassSection,
    pub semilinear: SemilinearSection,
    pub hamiltonian_degree: Option<(usize, usize)>,
    pub laws: Vec<LawResult>,
}

fn label_set(alg: &FiniteResiduatedLattice, s: crate::Subset) -> Vec<String> {
    subset_elems(s).into_iter().map(|x| alg.name_of(x).to_string()).collect()
}

fn conv_cover_edges(lat: &ConvLattice) -> Vec<(usize, usize)> {
    let k = lat.len();
    let mut out = Vec::new();
    for lo in 0..k {
        for hi in 0..k {
            if lo != hi
                && lat.le(lo, hi)
                && !(0..k).any(|z| z != lo && z != hi && lat.le(lo, z) && lat.le(z, hi))
            {
                out.push((lo, hi));
            }
        }
    }
    out
}

pub fn build_report(name: &str, alg: &FiniteResiduatedLattice) -> Result<AlgebraReport> {
    let lat = all_convex_subalgebras(alg)?;
    let ann = annotate(alg, &lat)?;
    let normal = all_normal(alg, &lat)?;
    let class = classify(alg)?;
    let semi = is_semilinear(alg, SemiRoute::All)?;
    let ham = hamiltonian_degree(alg)?;
    let f = alg.flags();

    let conv_nodes = (0..lat.len())
        .map(|i| ConvNodeReport {
            members: label_set(alg, lat.nodes[i].members),
            prime: ann.is_prime[i],
            minimal_prime: ann.is_minimal_prime[i],
            polar: ann.is_polar[i],
            normal: normal.contains(&i),
        })
        .collect();

    let values = ann
        .values_of
        .iter()
        .map(|nodes| nodes.iter().map(|&i| label_set(alg, lat.nodes[i].members)).collect())
        .collect();

    let mut laws = Vec::new();
    for lname in REPORT_LAWS {
        let verdict = check_law(alg, &catalog_law(lname)?, None)?;
        laws.push(match verdict {
            LawVerdict::Holds => {
                LawResult { name: lname.to_string(), holds: true, counterexample: None }
            }
            LawVerdict::Counterexample(assignment) => LawResult {
                name: lname.to_string(),
                holds: false,
                counterexample: Some(
                    assignment.iter().map(|&x| alg.name_of(x).to_string()).collect(),
                ),
            },
        });
    }

    Ok(AlgebraReport {
        name: name.to_string(),
        size: alg.size(),
        elements: alg.names().to_vec(),
        unit: alg.name_of(alg.unit()).to_string(),
        flags: FlagsReport {
            e_cyclic: f.e_cyclic,
            integral: f.integral,
            commutative: f.commutative,
            chain: f.chain,
            bounded: f.bounded,
        },
        conv_nodes,
        conv_edges: conv_cover_edges(&lat),
        values,
        class: ClassSection {
            gbl: class.is_gbl,
            gmv: class.is_gmv,
            lgroup: class.is_lgroup,
            integral: class.is_integral,
            invertibles: label_set(alg, class.invertibles),
            integrals: label_set(alg, class.integrals),
        },
        semilinear: SemilinearSection {
            semilinear: semi.semilinear,
            route: format!("{:?}", semi.route),
            decomposition: semi
                .decomposition
                .map(|ks| ks.into_iter().map(|k| label_set(alg, k)).collect()),
            counterexample: semi
                .counterexample
                .map(|cx| cx.iter().map(|&x| alg.name_of(x).to_string()).collect()),
        },
        hamiltonian_degree: ham,
        laws,
    })
}

pub fn report_json(report: &AlgebraReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT digraph of the cover relation, nodes in index order, edges lo → hi.
pub fn export_dot(name: &str, alg: &FiniteResiduatedLattice) -> String {
    let mut s = String::new();
    s.push_str(&format!("digraph \"{}\" {{\n", dot_escape(name)));
    s.push_str("  rankdir=BT;\n");
    for x in alg.elems() {
        s.push_str(&format!("  n{x} [label=\"{}\"];\n", dot_escape(alg.name_of(x))));
    }
    for (lo, hi) in cover_pairs(alg) {
        s.push_str(&format!("  n{lo} -> n{hi};\n"));
    }
    s.push_str("}\n");
    s
}

/// DOT digraph of the convex-subalgebra lattice's cover relation.
pub fn export_conv_dot(name: &str, alg: &FiniteResiduatedLattice) -> Result<String> {
    let lat = all_convex_subalgebras(alg)?;
    let mut s = String::new();
    s.push_str(&format!("digraph \"{}\" {{\n", dot_escape(name)));
    s.push_str("  rankdir=BT;\n");
    for (i, node) in lat.nodes.iter().enumerate() {
        let label = format!("{{{}}}", label_set(alg, node.members).join(","));
        s.push_str(&format!("  c{i} [label=\"{}\"];\n", dot_escape(&label)));
    }
    for (lo, hi) in conv_cover_edges(&lat) {
        s.push_str(&format!("  c{lo} -> c{hi};\n"));
    }
    s.push_str("}\n");
    Ok(s)
}

/// A [`FiniteLattice`](crate::spectrum::FiniteLattice) view is not needed
/// here; reports recompute everything from the algebra for determinism.
pub fn lattice_of(alg: &FiniteResiduatedLattice) -> Result<crate::spectrum::FiniteLattice> {
    let lat = all_convex_subalgebras(alg)?;
    Ok(conv_as_lattice(&lat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::builtin;

    #[test]
    fn report_round_trips_through_json() {
        for name in ["chain2", "godel3", "example5", "nonintegral3"] {
            let alg = builtin(name).unwrap();
            let rep = build_report(name, &alg).unwrap();
            let json = report_json(&rep);
            let back: AlgebraReport = serde_json::from_str(&json).unwrap();
            assert_eq!(back, rep);
            // deterministic across runs
            assert_eq!(json, report_json(&build_report(name, &alg).unwrap()));
        }
    }

    #[test]
    fn example5_report_contents() {
        let alg = builtin("example5").unwrap();
        let rep = build_report("example5", &alg).unwrap();
        assert_eq!(rep.conv_nodes.len(), 4);
        assert!(!rep.semilinear.semilinear);
        assert_eq!(rep.hamiltonian_degree, None);
        assert!(rep.laws.iter().any(|l| l.name == "SQUARE_JOIN" && l.holds));
        assert!(rep.laws.iter().any(|l| l.name == "SEMI_EQ1" && !l.holds));
        // NC(L) = {{e}, L}: exactly the bottom and top nodes are normal
        let normal: Vec<usize> = (0..4).filter(|&i| rep.conv_nodes[i].normal).collect();
        assert_eq!(normal.len(), 2);
        assert_eq!(rep.conv_nodes[normal[0]].members, vec!["e"]);
        assert_eq!(rep.conv_nodes[normal[1]].members.len(), 5);
    }

    #[test]
    fn dot_outputs_have_expected_shape() {
        let alg = builtin("example5").unwrap();
        let dot = export_dot("example5", &alg);
        assert_eq!(dot.matches("label=").count(), 5);
        assert_eq!(dot.matches("->").count(), 5);
        let conv = export_conv_dot("example5", &alg).unwrap();
        assert_eq!(conv.matches("label=").count(), 4);
        assert_eq!(conv.matches("->").count(), 4);
        let trivial = builtin("trivial").unwrap();
        let t = export_dot("trivial", &trivial);
        assert_eq!(t.matches("label=").count(), 1);
        assert_eq!(t.matches("->").count(), 0);
    }

    #[test]
    fn godel3_report_class_section() {
        let rep = build_report("godel3", &builtin("godel3").unwrap()).unwrap();
        assert!(rep.class.gbl && !rep.class.gmv);
        assert_eq!(rep.class.invertibles, vec!["e"]);
        assert_eq!(rep.hamiltonian_degree, Some((1, 1)));
        assert!(rep.semilinear.semilinear);
        assert!(rep.flags.chain);
    }
}
