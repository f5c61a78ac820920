//! Line-oriented text format for algebras.
//!
//! ```text
//! algebra <name>
//! elements <labels...>
//! unit <label>
//! fconst <label>        # optional
//! order                 # block of cover pairs `<lo> <hi>`
//!   <lo> <hi>
//! mult                  # n rows of n labels
//!   <row of labels>
//! lres                  # optional; same shape as mult
//! rres                  # optional
//! end
//! ```
//! `#` starts a comment anywhere on a line.

use crate::algebra::{Elem, FiniteResiduatedLattice, RawAlgebra};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedAlgebra {
    pub name: String,
    pub algebra: FiniteResiduatedLattice,
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next_content(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, raw) in self.iter.by_ref() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                return Some((i + 1, line.split_whitespace().collect()));
            }
        }
        None
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::SyntaxError(line, msg.into())
}

/// Parses one algebra from its text form.
pub fn parse_algebra(text: &str) -> Result<ParsedAlgebra> {
    let mut lines = Lines { iter: text.lines().enumerate() };

    let (ln, head) = lines.next_content().ok_or_else(|| err(0, "empty input"))?;
    if head.len() != 2 || head[0] != "algebra" {
        return Err(err(ln, "expected `algebra <name>`"));
    }
    let name = head[1].to_string();

    let (ln, elems) = lines.next_content().ok_or_else(|| err(ln, "missing `elements`"))?;
    if elems.first() != Some(&"elements") || elems.len() < 2 {
        return Err(err(ln, "expected `elements <labels...>`"));
    }
    let names: Vec<String> = elems[1..].iter().map(|s| s.to_string()).collect();
    let n = names.len();
    let index = |label: &str| -> Result<Elem> {
        names
            .iter()
            .position(|s| s == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    };

    let mut unit: Option<Elem> = None;
    let mut f_const: Option<Elem> = None;
    let mut leq: Option<Vec<bool>> = None;
    let mut mult: Option<Vec<Elem>> = None;
    let mut lres: Option<Vec<Elem>> = None;
    let mut rres: Option<Vec<Elem>> = None;
    let mut seen_end = false;

    let mut pending = lines.next_content();
    while let Some((ln, toks)) = pending.take() {
        match toks[0] {
            "unit" => {
                if unit.is_some() {
                    return Err(Error::DuplicateBlock("unit".into()));
                }
                if toks.len() != 2 {
                    return Err(err(ln, "expected `unit <label>`"));
                }
                unit = Some(index(toks[1])?);
                pending = lines.next_content();
            }
            "fconst" => {
                if f_const.is_some() {
                    return Err(Error::DuplicateBlock("fconst".into()));
                }
                if toks.len() != 2 {
                    return Err(err(ln, "expected `fconst <label>`"));
                }
                f_const = Some(index(toks[1])?);
                pending = lines.next_content();
            }
            "order" => {
                if leq.is_some() {
                    return Err(Error::DuplicateBlock("order".into()));
                }
                if toks.len() != 1 {
                    return Err(err(ln, "`order` takes no arguments"));
                }
                let mut m = vec![false; n * n];
                for x in 0..n {
                    m[x * n + x] = true;
                }
                loop {
                    match lines.next_content() {
                        Some((l2, pair)) if pair.len() == 2 && !is_keyword(pair[0]) => {
                            let lo = index(pair[0])?;
                            let hi = index(pair[1])?;
                            let _ = l2;
                            m[lo * n + hi] = true;
                        }
                        other => {
                            // transitive closure of the cover pairs
                            loop {
                                let mut changed = false;
                                for x in 0..n {
                                    for y in 0..n {
                                        if m[x * n + y] {
                                            for z in 0..n {
                                                if m[y * n + z] && !m[x * n + z] {
                                                    m[x * n + z] = true;
                                                    changed = true;
                                                }
                                            }
                                        }
                                    }
                                }
                                if !changed {
                                    break;
                                }
                            }
                            leq = Some(m);
                            pending = other;
                            break;
                        }
                    }
                }
            }
            "mult" | "lres" | "rres" => {
                let key = toks[0].to_string();
                let slot = match key.as_str() {
                    "mult" => &mut mult,
                    "lres" => &mut lres,
                    _ => &mut rres,
                };
                if slot.is_some() {
                    return Err(Error::DuplicateBlock(key));
                }
                if toks.len() != 1 {
                    return Err(err(ln, format!("`{key}` takes no arguments")));
                }
                let mut table = Vec::with_capacity(n * n);
                for row in 0..n {
                    let (l2, cells) = lines
                        .next_content()
                        .ok_or_else(|| err(ln, format!("`{key}` block ends after {row} rows")))?;
                    if cells.len() != n {
                        return Err(err(l2, format!("expected {n} labels in `{key}` row")));
                    }
                    for cell in cells {
                        table.push(index(cell)?);
                    }
                }
                *slot = Some(table);
                pending = lines.next_content();
            }
            "end" => {
                if toks.len() != 1 {
                    return Err(err(ln, "`end` takes no arguments"));
                }
                seen_end = true;
                pending = None;
            }
            other => return Err(err(ln, format!("unexpected `{other}`"))),
        }
    }
    if !seen_end {
        return Err(err(0, "missing `end`"));
    }

    let raw = RawAlgebra {
        names,
        leq: leq.ok_or_else(|| err(0, "missing `order` block"))?,
        mult: mult.ok_or_else(|| err(0, "missing `mult` block"))?,
        unit: unit.ok_or_else(|| err(0, "missing `unit`"))?,
        f_const,
        lres,
        rres,
    };
    Ok(ParsedAlgebra { name, algebra: FiniteResiduatedLattice::validate(raw)? })
}

fn is_keyword(tok: &str) -> bool {
    matches!(tok, "algebra" | "elements" | "unit" | "fconst" | "order" | "mult" | "lres" | "rres" | "end")
}

/// Parses a bare lattice file: `lattice <name>`, `elements`, an `order`
/// block of cover pairs, `end`. Returns the labels and the order matrix.
pub fn parse_lattice(text: &str) -> Result<(String, Vec<String>, Vec<bool>)> {
    let mut lines = Lines { iter: text.lines().enumerate() };
    let (ln, head) = lines.next_content().ok_or_else(|| err(0, "empty input"))?;
    if head.len() != 2 || (head[0] != "lattice" && head[0] != "algebra") {
        return Err(err(ln, "expected `lattice <name>`"));
    }
    let name = head[1].to_string();
    let (ln, elems) = lines.next_content().ok_or_else(|| err(ln, "missing `elements`"))?;
    if elems.first() != Some(&"elements") || elems.len() < 2 {
        return Err(err(ln, "expected `elements <labels...>`"));
    }
    let names: Vec<String> = elems[1..].iter().map(|s| s.to_string()).collect();
    let n = names.len();
    let index = |label: &str| -> Result<Elem> {
        names
            .iter()
            .position(|s| s == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    };
    let (ln, kw) = lines.next_content().ok_or_else(|| err(ln, "missing `order`"))?;
    if kw != ["order"] {
        return Err(err(ln, "expected `order`"));
    }
    let mut m = vec![false; n * n];
    for x in 0..n {
        m[x * n + x] = true;
    }
    loop {
        match lines.next_content() {
            Some((_, pair)) if pair.len() == 2 => {
                m[index(pair[0])? * n + index(pair[1])?] = true;
            }
            Some((_, toks)) if toks == ["end"] => break,
            Some((l2, _)) => return Err(err(l2, "expected cover pair or `end`")),
            None => return Err(err(0, "missing `end`")),
        }
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                if m[x * n + y] {
                    for z in 0..n {
                        if m[y * n + z] && !m[x * n + z] {
                            m[x * n + z] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    crate::algebra::check_partial_order(&m, n)?;
    Ok((name, names, m))
}

/// Cover pairs `(lo, hi)` of the order: `lo < hi` with nothing in between.
pub fn cover_pairs(alg: &FiniteResiduatedLattice) -> Vec<(Elem, Elem)> {
    let mut out = Vec::new();
    for lo in alg.elems() {
        for hi in alg.elems() {
            if lo != hi
                && alg.le(lo, hi)
                && !alg
                    .elems()
                    .any(|z| z != lo && z != hi && alg.le(lo, z) && alg.le(z, hi))
            {
                out.push((lo, hi));
            }
        }
    }
    out
}

/// Writes the text form; `parse_algebra(write_algebra(..))` restores the
/// algebra exactly.
pub fn write_algebra(name: &str, alg: &FiniteResiduatedLattice) -> String {
    let mut s = String::new();
    s.push_str(&format!("algebra {name}\n"));
    s.push_str(&format!("elements {}\n", alg.names().join(" ")));
    s.push_str(&format!("unit {}\n", alg.name_of(alg.unit())));
    if let Some(f) = alg.f_const() {
        s.push_str(&format!("fconst {}\n", alg.name_of(f)));
    }
    s.push_str("order\n");
    for (lo, hi) in cover_pairs(alg) {
        s.push_str(&format!("  {} {}\n", alg.name_of(lo), alg.name_of(hi)));
    }
    for (key, table) in [
        ("mult", FiniteResiduatedLattice::mult as fn(&FiniteResiduatedLattice, Elem, Elem) -> Elem),
        ("lres", FiniteResiduatedLattice::lres),
        ("rres", FiniteResiduatedLattice::rres),
    ] {
        s.push_str(key);
        s.push('\n');
        for x in alg.elems() {
            let row: Vec<&str> = alg.elems().map(|y| alg.name_of(table(alg, x, y))).collect();
            s.push_str(&format!("  {}\n", row.join(" ")));
        }
    }
    s.push_str("end\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{builtin, builtin_names};

    #[test]
    fn round_trip_all_builtins() {
        for name in builtin_names() {
            let alg = builtin(name).unwrap();
            let text = write_algebra(name, &alg);
            let back = parse_algebra(&text).unwrap();
            assert_eq!(back.name, *name);
            assert_eq!(back.algebra, alg, "{name}");
        }
    }

    #[test]
    fn residual_blocks_are_optional() {
        let alg = builtin("godel3").unwrap();
        let mut text = String::new();
        let full = write_algebra("g3", &alg);
        let mut in_res = false;
        for line in full.lines() {
            let first = line.trim().split_whitespace().next().unwrap_or("");
            if first == "lres" || first == "rres" {
                in_res = true;
                continue;
            }
            if in_res && !is_keyword(first) {
                continue;
            }
            in_res = false;
            text.push_str(line);
            text.push('\n');
        }
        let back = parse_algebra(&text).unwrap();
        assert_eq!(back.algebra, alg);
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "# a comment\nalgebra t  # trailing\n\nelements e\nunit e\norder\nmult\n  e\nend\n";
        let p = parse_algebra(text).unwrap();
        assert_eq!(p.algebra.size(), 1);
    }

    #[test]
    fn order_cycle_is_rejected() {
        let text = "algebra bad\nelements a b e\nunit e\norder\n  a b\n  b a\n  a e\nmult\n  a a a\n  a a a\n  a b e\nend\n";
        assert!(matches!(parse_algebra(text), Err(Error::NotAPartialOrder(_))));
    }

    #[test]
    fn unknown_label_and_duplicate_block() {
        let text = "algebra bad\nelements 0 e\nunit q\n";
        assert_eq!(parse_algebra(text), Err(Error::UnknownLabel("q".into())));
        let text =
            "algebra bad\nelements 0 e\nunit e\nunit e\norder\n  0 e\nmult\n  0 0\n  0 e\nend\n";
        assert_eq!(parse_algebra(text), Err(Error::DuplicateBlock("unit".into())));
    }

    #[test]
    fn syntax_error_carries_line_number() {
        let text = "algebra x\nwhat\n";
        match parse_algebra(text) {
            Err(Error::SyntaxError(line, _)) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn example5_has_five_cover_pairs() {
        let alg = builtin("example5").unwrap();
        let by = |s: &str| alg.names().iter().position(|n| n == s).unwrap();
        let covers = cover_pairs(&alg);
        assert_eq!(covers.len(), 5);
        assert!(covers.contains(&(by("0"), by("c"))));
        assert!(covers.contains(&(by("c"), by("a"))));
        assert!(covers.contains(&(by("c"), by("b"))));
        assert!(covers.contains(&(by("a"), by("e"))));
        assert!(covers.contains(&(by("b"), by("e"))));
    }
}
