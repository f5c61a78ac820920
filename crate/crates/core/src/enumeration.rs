//! Model finding: all residuated-lattice expansions of a finite lattice up
//! to isomorphism, generation of all small lattices, and canonical forms.

use std::collections::BTreeMap;

use crate::algebra::{
    check_partial_order, lattice_tables, Elem, FiniteResiduatedLattice, RawAlgebra,
};
use crate::laws::catalog_law;
use crate::term::{check_law, MAX_VAR_CAP};
use crate::{Error, Result};

pub const EXPANSION_GUARD: usize = 8;

/// What to search for on a fixed base lattice.
#[derive(Debug, Clone)]
pub struct SearchSpec {
    /// Row-major order matrix of the base lattice.
    pub leq: Vec<bool>,
    pub size: usize,
    /// Pin the unit at the top element.
    pub require_integral: bool,
    /// Pin the unit at a specific element (ignored when integral).
    pub unit: Option<Elem>,
    /// Catalog law names every emitted expansion must satisfy.
    pub laws: Vec<String>,
    /// Deduplicate up to isomorphism.
    pub iso_reduce: bool,
}

impl SearchSpec {
    pub fn new(leq: Vec<bool>, size: usize) -> SearchSpec {
        SearchSpec { leq, size, require_integral: false, unit: None, laws: vec![], iso_reduce: true }
    }
}

struct Search<'a> {
    n: usize,
    leq: &'a [bool],
    join: Vec<Elem>,
    mult: Vec<Option<Elem>>,
    /// Cells in assignment order.
    cells: Vec<(Elem, Elem)>,
    out: Vec<Vec<Elem>>,
}

impl<'a> Search<'a> {
    fn le(&self, x: Elem, y: Elem) -> bool {
        self.leq[x * self.n + y]
    }

    fn get(&self, x: Elem, y: Elem) -> Option<Elem> {
        self.mult[x * self.n + y]
    }

    fn consistent_after(&self, x: Elem, y: Elem) -> bool {
        let n = self.n;
        let v = self.get(x, y).unwrap();
        // order-compatibility with every decided comparable cell
        for a in 0..n {
            for b in 0..n {
                if let Some(w) = self.get(a, b) {
                    if self.le(a, x) && self.le(b, y) && !self.le(w, v) {
                        return false;
                    }
                    if self.le(x, a) && self.le(y, b) && !self.le(v, w) {
                        return false;
                    }
                }
            }
        }
        // join preservation on decided triples touching row/column of (x,y)
        for a in 0..n {
            for b in 0..n {
                let j = self.join[a * n + b];
                if let (Some(pa), Some(pb), Some(pj)) =
                    (self.get(a, y), self.get(b, y), self.get(j, y))
                {
                    if pj != self.join[pa * n + pb] {
                        return false;
                    }
                }
                if let (Some(pa), Some(pb), Some(pj)) =
                    (self.get(x, a), self.get(x, b), self.get(x, j))
                {
                    if pj != self.join[pa * n + pb] {
                        return false;
                    }
                }
            }
        }
        // associativity on the completed-triple frontier
        for a in 0..n {
            for b in 0..n {
                if let Some(ab) = self.get(a, b) {
                    for c in 0..n {
                        if let (Some(bc), Some(l)) = (self.get(b, c), self.get(ab, c)) {
                            if let Some(r) = self.get(a, bc) {
                                if l != r {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        // residual existence on completed rows/columns
        if (0..n).all(|b| self.get(x, b).is_some()) && !self.row_residuated(x) {
            return false;
        }
        if (0..n).all(|a| self.get(a, y).is_some()) && !self.col_residuated(y) {
            return false;
        }
        true
    }

    fn row_residuated(&self, x: Elem) -> bool {
        let n = self.n;
        (0..n).all(|z| {
            let cand: Vec<Elem> = (0..n).filter(|&y| self.le(self.get(x, y).unwrap(), z)).collect();
            cand.iter().any(|&y| cand.iter().all(|&w| self.le(w, y)))
        })
    }

    fn col_residuated(&self, y: Elem) -> bool {
        let n = self.n;
        (0..n).all(|z| {
            let cand: Vec<Elem> = (0..n).filter(|&x| self.le(self.get(x, y).unwrap(), z)).collect();
            cand.iter().any(|&x| cand.iter().all(|&w| self.le(w, x)))
        })
    }

    fn run(&mut self, depth: usize) {
        if depth == self.cells.len() {
            self.out.push(self.mult.iter().map(|c| c.unwrap()).collect());
            return;
        }
        let (x, y) = self.cells[depth];
        for v in 0..self.n {
            self.mult[x * self.n + y] = Some(v);
            if self.consistent_after(x, y) {
                self.run(depth + 1);
            }
        }
        self.mult[x * self.n + y] = None;
    }
}

fn expansion_from_table(
    leq: &[bool],
    n: usize,
    mult: Vec<Elem>,
    unit: Elem,
) -> FiniteResiduatedLattice {
    let raw = RawAlgebra {
        names: (0..n).map(|i| format!("x{i}")).collect(),
        leq: leq.to_vec(),
        mult,
        unit,
        f_const: None,
        lres: None,
        rres: None,
    };
    FiniteResiduatedLattice::validate(raw).expect("search emits only valid tables")
}

fn search_with_unit(leq: &[bool], n: usize, join: &[Elem], unit: Elem) -> Vec<Vec<Elem>> {
    let mut mult = vec![None; n * n];
    for x in 0..n {
        mult[unit * n + x] = Some(x);
        mult[x * n + unit] = Some(x);
    }
    // rows by descending element index, so (in a linear extension) the
    // most-negative rows are decided first
    let mut cells = Vec::new();
    for x in (0..n).rev() {
        for y in (0..n).rev() {
            if x != unit && y != unit {
                cells.push((x, y));
            }
        }
    }
    let mut s = Search { n, leq, join: join.to_vec(), mult, cells, out: vec![] };
    s.run(0);
    s.out
}

/// All residuated-lattice expansions of the base lattice matching the spec,
/// in deterministic order.
pub fn expansions(spec: &SearchSpec, force: bool) -> Result<Vec<FiniteResiduatedLattice>> {
    let n = spec.size;
    if n > EXPANSION_GUARD && !force {
        return Err(Error::SizeGuard(n, EXPANSION_GUARD));
    }
    check_partial_order(&spec.leq, n)?;
    let (join, _) = lattice_tables(&spec.leq, n)?;
    let le = |x: Elem, y: Elem| spec.leq[x * n + y];
    let top = (0..n).find(|&t| (0..n).all(|x| le(x, t))).expect("lattice has a top");
    let units: Vec<Elem> = if spec.require_integral {
        vec![top]
    } else if let Some(u) = spec.unit {
        if u >= n {
            return Err(Error::InconsistentTables("pinned unit out of range".into()));
        }
        vec![u]
    } else {
        (0..n).collect()
    };

    let laws = spec
        .laws
        .iter()
        .map(|name| catalog_law(name))
        .collect::<Result<Vec<_>>>()?;
    let mut found: Vec<FiniteResiduatedLattice> = Vec::new();
    for unit in units {
        for table in search_with_unit(&spec.leq, n, &join, unit) {
            let alg = expansion_from_table(&spec.leq, n, table, unit);
            if spec.require_integral && !alg.flags().integral {
                continue;
            }
            let ok = laws
                .iter()
                .map(|law| Ok(check_law(&alg, law, Some(MAX_VAR_CAP))?.holds()))
                .collect::<Result<Vec<bool>>>()?;
            if ok.iter().all(|&b| b) {
                found.push(alg);
            }
        }
    }
    if spec.iso_reduce {
        let mut by_canon: BTreeMap<Vec<usize>, FiniteResiduatedLattice> = BTreeMap::new();
        for alg in found {
            by_canon.entry(canonical_form(&alg)).or_insert(alg);
        }
        Ok(by_canon.into_values().collect())
    } else {
        found.sort_by_key(|a| {
            let mut key = vec![a.unit()];
            for x in 0..n {
                for y in 0..n {
                    key.push(a.mult(x, y));
                }
            }
            key
        });
        Ok(found)
    }
}

/// Unpruned oracle for [`expansions`]: scans every table with the unit row
/// and column fixed and filters by full validation. Usable only at tiny sizes.
pub fn naive_expansions(spec: &SearchSpec, cap: usize) -> Result<Vec<FiniteResiduatedLattice>> {
    let n = spec.size;
    if n > cap {
        return Err(Error::SizeGuard(n, cap));
    }
    check_partial_order(&spec.leq, n)?;
    let le = |x: Elem, y: Elem| spec.leq[x * n + y];
    let top = (0..n).find(|&t| (0..n).all(|x| le(x, t))).expect("lattice has a top");
    let units: Vec<Elem> = if spec.require_integral {
        vec![top]
    } else if let Some(u) = spec.unit {
        vec![u]
    } else {
        (0..n).collect()
    };
    let laws = spec
        .laws
        .iter()
        .map(|name| catalog_law(name))
        .collect::<Result<Vec<_>>>()?;
    let mut found = Vec::new();
    for unit in units {
        let free: Vec<(Elem, Elem)> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| x != unit && y != unit)
            .collect();
        let mut idx = vec![0 as Elem; free.len()];
        loop {
            let mut mult = vec![0; n * n];
            for x in 0..n {
                mult[unit * n + x] = x;
                mult[x * n + unit] = x;
            }
            for (k, &(x, y)) in free.iter().enumerate() {
                mult[x * n + y] = idx[k];
            }
            let raw = RawAlgebra {
                names: (0..n).map(|i| format!("x{i}")).collect(),
                leq: spec.leq.clone(),
                mult,
                unit,
                f_const: None,
                lres: None,
                rres: None,
            };
            if let Ok(alg) = FiniteResiduatedLattice::validate(raw) {
                if !(spec.require_integral && !alg.flags().integral) {
                    let ok = laws
                        .iter()
                        .map(|law| Ok(check_law(&alg, law, Some(MAX_VAR_CAP))?.holds()))
                        .collect::<Result<Vec<bool>>>()?;
                    if ok.iter().all(|&b| b) {
                        found.push(alg);
                    }
                }
            }
            let mut k = 0;
            loop {
                if k == free.len() {
                    break;
                }
                idx[k] += 1;
                if idx[k] < n {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == free.len() {
                break;
            }
        }
    }
    if spec.iso_reduce {
        let mut by_canon: BTreeMap<Vec<usize>, FiniteResiduatedLattice> = BTreeMap::new();
        for alg in found {
            by_canon.entry(canonical_form(&alg)).or_insert(alg);
        }
        Ok(by_canon.into_values().collect())
    } else {
        Ok(found)
    }
}

// ---------------------------------------------------------------------------
// Lattice generation
// ---------------------------------------------------------------------------

pub const LATTICE_GUARD: usize = 7;

/// All lattices on `1..=max_size` elements up to isomorphism, as row-major
/// order matrices paired with their size, sorted deterministically.
/// The element indexing of each output is a linear extension with the bottom
/// at index 0 and the top last.
pub fn all_lattices(max_size: usize) -> Result<Vec<(usize, Vec<bool>)>> {
    if max_size > LATTICE_GUARD {
        return Err(Error::SizeGuard(max_size, LATTICE_GUARD));
    }
    let mut out = Vec::new();
    for n in 1..=max_size {
        let mut canon: std::collections::BTreeSet<Vec<bool>> = Default::default();
        // down[i]: bitmask of elements <= i (including i)
        let mut down: Vec<u32> = vec![1];
        gen_lattices(n, &mut down, &mut canon);
        for leq in canon {
            out.push((n, leq));
        }
    }
    Ok(out)
}

fn gen_lattices(n: usize, down: &mut Vec<u32>, canon: &mut std::collections::BTreeSet<Vec<bool>>) {
    let j = down.len();
    if j == n {
        let leq = down_to_leq(down, n);
        canon.insert(canonical_poset(&leq, n));
        return;
    }
    let full: u32 = (1 << j) - 1;
    // candidate strict down-sets for the next element: downward-closed,
    // containing the bottom; the last element must lie above everything
    let choices: Vec<u32> = if j == n - 1 {
        vec![full]
    } else {
        (0..=full)
            .filter(|&d| {
                (j == 0 || d & 1 == 1)
                    && (0..j).all(|i| d & (1 << i) == 0 || down[i] & !d == 0)
            })
            .collect()
    };
    for d in choices {
        let dj = d | (1 << j);
        // meets with the new element must already exist, and no pair may
        // acquire two incomparable minimal upper bounds
        if j > 0 && !meets_and_joins_ok(down, dj) {
            continue;
        }
        down.push(dj);
        gen_lattices(n, down, canon);
        down.pop();
    }
}

fn meets_and_joins_ok(down: &[u32], dj: u32) -> bool {
    let j = down.len();
    // lower bounds of (i, j) are final once j exists: a greatest one must
    // exist now
    for i in 0..j {
        let lbs = down[i] & dj;
        if !(0..j).any(|l| lbs & (1 << l) != 0 && lbs & !down[l] == 0) {
            return false;
        }
    }
    // upper-bound sets only grow upward, so a nonempty set of upper bounds
    // with no least member can never be repaired
    let mut all = down.to_vec();
    all.push(dj);
    let m = all.len();
    for a in 0..m {
        for b in (a + 1)..m {
            let ubs: Vec<usize> =
                (0..m).filter(|&u| all[u] & (1 << a) != 0 && all[u] & (1 << b) != 0).collect();
            if !ubs.is_empty()
                && !ubs.iter().any(|&u| ubs.iter().all(|&v| all[v] & (1 << u) != 0))
            {
                return false;
            }
        }
    }
    true
}

fn down_to_leq(down: &[u32], n: usize) -> Vec<bool> {
    let mut leq = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            leq[i * n + j] = down[j] & (1 << i) != 0;
        }
    }
    leq
}

// ---------------------------------------------------------------------------
// Canonical forms
// ---------------------------------------------------------------------------

/// Permutations respecting the invariant-block partition, as `perm[old] = new`.
fn block_perms(invariants: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = invariants.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| invariants[a].cmp(&invariants[b]).then(a.cmp(&b)));
    // contiguous blocks of equal invariant in `order`
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &x in &order {
        match blocks.last_mut() {
            Some(last) if invariants[last[0]] == invariants[x] => last.push(x),
            _ => blocks.push(vec![x]),
        }
    }
    let mut perms = vec![vec![usize::MAX; n]];
    let mut base = 0usize;
    for block in &blocks {
        let k = block.len();
        let arrangements = permutations(k);
        let mut next = Vec::with_capacity(perms.len() * arrangements.len());
        for p in &perms {
            for arr in &arrangements {
                let mut q = p.clone();
                for (slot, &pos) in arr.iter().enumerate() {
                    q[block[pos]] = base + slot;
                }
                next.push(q);
            }
        }
        perms = next;
        base += k;
    }
    perms
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(k - 1) {
        for pos in 0..k {
            let mut p = rest.clone();
            p.insert(pos, k - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

fn poset_invariants(leq: &[bool], n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|x| {
            let below = (0..n).filter(|&y| leq[y * n + x]).count();
            let above = (0..n).filter(|&y| leq[x * n + y]).count();
            vec![below, above]
        })
        .collect()
}

/// Lexicographically least relabeling of the order matrix.
pub fn canonical_poset(leq: &[bool], n: usize) -> Vec<bool> {
    let mut best: Option<Vec<bool>> = None;
    for perm in block_perms(&poset_invariants(leq, n)) {
        let mut m = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                m[perm[x] * n + perm[y]] = leq[x * n + y];
            }
        }
        if best.as_ref().is_none_or(|b| encode_bits(&m) < encode_bits(b)) {
            best = Some(m);
        }
    }
    best.unwrap()
}

fn encode_bits(bits: &[bool]) -> Vec<u8> {
    bits.iter().map(|&b| b as u8).collect()
}

fn algebra_invariants(alg: &FiniteResiduatedLattice) -> Vec<Vec<usize>> {
    let n = alg.size();
    (0..n)
        .map(|x| {
            let below = (0..n).filter(|&y| alg.le(y, x)).count();
            let above = (0..n).filter(|&y| alg.le(x, y)).count();
            vec![
                below,
                above,
                (x == alg.unit()) as usize,
                (alg.f_const() == Some(x)) as usize,
                (alg.mult(x, x) == x) as usize,
            ]
        })
        .collect()
}

fn encode_under(alg: &FiniteResiduatedLattice, perm: &[usize]) -> Vec<usize> {
    let n = alg.size();
    let mut inv = vec![0; n];
    for (x, &px) in perm.iter().enumerate() {
        inv[px] = x;
    }
    let mut enc = Vec::with_capacity(4 * n * n + 2);
    enc.push(perm[alg.unit()]);
    enc.push(alg.f_const().map(|f| perm[f] + 1).unwrap_or(0));
    for a in 0..n {
        for b in 0..n {
            enc.push(alg.le(inv[a], inv[b]) as usize);
        }
    }
    for table in [
        FiniteResiduatedLattice::mult,
        FiniteResiduatedLattice::lres,
        FiniteResiduatedLattice::rres,
    ] {
        for a in 0..n {
            for b in 0..n {
                enc.push(perm[table(alg, inv[a], inv[b])]);
            }
        }
    }
    enc
}

/// Lexicographically least full-table encoding over invariant-compatible
/// relabelings. Equal encodings characterize isomorphism.
pub fn canonical_form(alg: &FiniteResiduatedLattice) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for perm in block_perms(&algebra_invariants(alg)) {
        let enc = encode_under(alg, &perm);
        if best.as_ref().is_none_or(|b| enc < *b) {
            best = Some(enc);
        }
    }
    best.unwrap()
}

/// The relabeled copy achieving [`canonical_form`].
pub fn canonical_relabel(alg: &FiniteResiduatedLattice) -> FiniteResiduatedLattice {
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    for perm in block_perms(&algebra_invariants(alg)) {
        let enc = encode_under(alg, &perm);
        if best.as_ref().is_none_or(|(b, _)| enc < *b) {
            best = Some((enc, perm));
        }
    }
    alg.relabel(&best.unwrap().1)
}

pub fn are_isomorphic(a: &FiniteResiduatedLattice, b: &FiniteResiduatedLattice) -> bool {
    a.size() == b.size() && canonical_form(a) == canonical_form(b)
}

/// Order matrix of the pentagon: 0 < a < b < 1 with c incomparable to a, b.
pub fn n5_order() -> (usize, Vec<bool>) {
    let n = 5;
    let mut leq = vec![false; n * n];
    // 0=bottom, 1=a, 2=b, 3=c, 4=top
    let pairs = [
        (0, 0), (1, 1), (2, 2), (3, 3), (4, 4),
        (0, 1), (0, 2), (0, 3), (0, 4),
        (1, 2), (1, 4), (2, 4), (3, 4),
    ];
    for (x, y) in pairs {
        leq[x * n + y] = true;
    }
    (n, leq)
}

fn chain_order(n: usize) -> Vec<bool> {
    let mut leq = vec![false; n * n];
    for x in 0..n {
        for y in x..n {
            leq[x * n + y] = true;
        }
    }
    leq
}

/// The standard test corpus: all integral expansions (up to isomorphism) of
/// every lattice with at most `max_lattice` elements, all expansions of
/// chains with at most `max_chain` elements, and the builtins.
pub fn corpus(max_lattice: usize, max_chain: usize) -> Result<Vec<FiniteResiduatedLattice>> {
    let mut out = Vec::new();
    for (n, leq) in all_lattices(max_lattice)? {
        let mut spec = SearchSpec::new(leq, n);
        spec.require_integral = true;
        out.extend(expansions(&spec, false)?);
    }
    for n in 1..=max_chain {
        let spec = SearchSpec::new(chain_order(n), n);
        out.extend(expansions(&spec, false)?);
    }
    for name in crate::structures::builtin_names() {
        out.push(crate::structures::builtin(name)?);
    }
    Ok(out)
}
