//! Weighted path diagrams for the top cell and for boundary cells:
//! construction from the fixed reduced word, non-intersecting path
//! collection enumeration, minor evaluation through the path lemma, greedy
//! paths, and DOT export.
//!
//! Strand positions run 1..2n bottom to top; the strand at position p ends
//! at the sink labeled p for p <= n and 3n+1-p above. Source labels start
//! out the same and get permuted by the boundary surgery. Arrows sit at
//! even x coordinates (two per word letter), sign marks from the surgery at
//! odd x.

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::weyl::{
    bruhat_leq, coset_word_from_subset, distinguished_subexpr, min_coset_rep, w0_coset_word,
    SignedPerm,
};

/// Vertical arrow between strand positions; `param` indexes its weight.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Arrow {
    pub tail: usize,
    pub head: usize,
    pub param: usize,
    pub negative: bool,
    pub x: i64,
}

/// Weighted directed diagram whose non-intersecting path collections
/// compute the maximal minors of the corresponding point matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Diagram {
    n: usize,
    params: usize,
    /// sources[p-1] is the source label of the strand at position p.
    sources: Vec<usize>,
    /// (position, x) pairs marking a -1 on part of a strand.
    marks: Vec<(usize, i64)>,
    arrows: Vec<Arrow>,
}

/// Sink label of the strand at position p.
fn std_label(n: usize, p: usize) -> usize {
    if p <= n {
        p
    } else {
        3 * n + 1 - p
    }
}

/// Position of the strand with standard label v.
fn std_position(n: usize, v: usize) -> usize {
    if v <= n {
        v
    } else {
        3 * n + 1 - v
    }
}

impl Diagram {
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> usize {
        self.params
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn marks(&self) -> &[(usize, i64)] {
        &self.marks
    }

    pub fn sink_label(&self, position: usize) -> usize {
        std_label(self.n, position)
    }

    fn source_position(&self, label: usize) -> usize {
        1 + self
            .sources
            .iter()
            .position(|&s| s == label)
            .expect("source labels form a bijection")
    }
}

/// Diagram of the dense cell: two arrows per letter of the fixed coset
/// word, the lower pair ascending one strand, the jump pair skipping one.
pub fn build_top(n: usize) -> Diagram {
    let word = w0_coset_word(n);
    let mut arrows = Vec::with_capacity(2 * word.len());
    for (slot, &letter) in word.letters.iter().enumerate() {
        let x = 2 * (slot as i64 + 1);
        let param = slot + 1;
        let (lower, upper) = arrow_positions(n, letter);
        arrows.push(Arrow {
            tail: lower.0,
            head: lower.1,
            param,
            negative: false,
            x,
        });
        arrows.push(Arrow {
            tail: upper.0,
            head: upper.1,
            param,
            negative: true,
            x,
        });
    }
    Diagram {
        n,
        params: word.len(),
        sources: (1..=2 * n).map(|p| std_label(n, p)).collect(),
        marks: Vec::new(),
        arrows,
    }
}

/// Strand-position endpoints of the positive and negative arrows of one
/// letter, read off the nonzero entries of the one-parameter matrices.
fn arrow_positions(n: usize, letter: usize) -> ((usize, usize), (usize, usize)) {
    if letter < n {
        (
            (letter, letter + 1),
            (2 * n - letter, 2 * n + 1 - letter),
        )
    } else {
        ((n - 1, n + 1), (n, n + 2))
    }
}

/// Boundary-cell diagram: delete the arrow pairs outside w's distinguished
/// mask, then for each selected letter of v's distinguished mask, in word
/// order, remove that letter's arrows and perform the signed strand action
/// on everything to its left.
pub fn build_boundary(v: &SignedPerm, w: &SignedPerm) -> Result<Diagram> {
    let n = w.rank();
    if &min_coset_rep(w) != w {
        return Err(Error::InvalidCellLabel(format!(
            "{} is not a minimal coset representative",
            w.window_string()
        )));
    }
    if !bruhat_leq(v, w) {
        return Err(Error::NotBruhatBelow {
            v: v.window_string(),
            w: w.window_string(),
        });
    }
    let mask_w = coset_word_from_subset(n, &w.subset_of())?;
    let w_word = mask_w.selected_word();
    let mask_v = distinguished_subexpr(v, &w_word)?;

    // strand_at[p-1] is the id of the strand at position p; strands are
    // identified with their initial position.
    let mut strand_at: Vec<usize> = (0..2 * n).collect();
    let mut strand_pos: Vec<usize> = (0..2 * n).collect();
    let mut strand_marks: Vec<Vec<i64>> = vec![Vec::new(); 2 * n];
    // Arrows as (tail strand id, head strand id, x, param, negative).
    let mut raw: Vec<(usize, usize, i64, usize, bool)> = Vec::new();
    let mut params = 0usize;

    let mut word_pos = 0usize;
    for (slot, &letter) in mask_w.base.letters.iter().enumerate() {
        if !mask_w.mask[slot] {
            continue;
        }
        let x = 2 * (slot as i64 + 1);
        if mask_v.mask[word_pos] {
            // Signed action at the cut just right of this letter's slot:
            // the descending lines of the transposed lift carry the -1.
            let cut = x + 1;
            let (swap_a, swap_b, marked) = if letter < n {
                (
                    (letter, letter + 1),
                    (2 * n - letter, 2 * n + 1 - letter),
                    [letter + 1, 2 * n - letter],
                )
            } else {
                ((n - 1, n + 1), (n, n + 2), [n + 1, n])
            };
            for p in marked {
                strand_marks[strand_at[p - 1]].push(cut);
            }
            for (p, q) in [swap_a, swap_b] {
                strand_at.swap(p - 1, q - 1);
                strand_pos[strand_at[p - 1]] = p - 1;
                strand_pos[strand_at[q - 1]] = q - 1;
            }
        } else {
            params += 1;
            let (lower, upper) = arrow_positions(n, letter);
            raw.push((strand_at[lower.0 - 1], strand_at[lower.1 - 1], x, params, false));
            raw.push((strand_at[upper.0 - 1], strand_at[upper.1 - 1], x, params, true));
        }
        word_pos += 1;
    }

    // strand_pos is 0-based; diagram positions are 1-based.
    let arrows: Vec<Arrow> = raw
        .into_iter()
        .map(|(tail_id, head_id, x, param, negative)| Arrow {
            tail: strand_pos[tail_id] + 1,
            head: strand_pos[head_id] + 1,
            param,
            negative,
            x,
        })
        .collect();
    debug_assert!(arrows.iter().all(|a| a.tail < a.head), "arrows point up");

    let mut sources = vec![0usize; 2 * n];
    let mut marks = Vec::new();
    for id in 0..2 * n {
        sources[strand_pos[id]] = std_label(n, id + 1);
        for &x in &strand_marks[id] {
            marks.push((strand_pos[id] + 1, x));
        }
    }
    marks.sort();
    Ok(Diagram {
        n,
        params,
        sources,
        marks,
        arrows,
    })
}

/// Path from a source label to a sink label, recorded by the indices of the
/// arrows it uses, left to right.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Path {
    pub source: usize,
    pub sink: usize,
    pub arrows: Vec<usize>,
}

/// Pairwise non-intersecting paths from the sources labeled 1..n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathCollection {
    pub paths: Vec<Path>,
}

const X_END: i64 = i64::MAX;

/// Occupied closed x-intervals per strand position.
struct Occupancy {
    intervals: Vec<Vec<(i64, i64)>>,
}

impl Occupancy {
    fn new(strands: usize) -> Self {
        Occupancy {
            intervals: vec![Vec::new(); strands],
        }
    }
    fn is_free(&self, pos: usize, lo: i64, hi: i64) -> bool {
        self.intervals[pos - 1]
            .iter()
            .all(|&(a, b)| hi < a || b < lo)
    }
    fn occupy(&mut self, pos: usize, lo: i64, hi: i64) {
        self.intervals[pos - 1].push((lo, hi));
    }
    fn release(&mut self, pos: usize) {
        self.intervals[pos - 1].pop();
    }
}

/// All non-intersecting path collections from the sources labeled 1..n to
/// the given sink labels. Guarded against large ranks; see the unbounded
/// variant to override.
pub fn enumerate_collections(d: &Diagram, sinks: &[usize]) -> Result<Vec<PathCollection>> {
    if d.n > 8 {
        return Err(Error::GuardExceeded { n: d.n, limit: 8 });
    }
    Ok(enumerate_collections_unbounded(d, sinks))
}

pub fn enumerate_collections_unbounded(d: &Diagram, sinks: &[usize]) -> Vec<PathCollection> {
    let n = d.n;
    assert_eq!(sinks.len(), n, "need exactly n sinks");
    let mut sink_positions: Vec<usize> = sinks.iter().map(|&v| std_position(n, v)).collect();
    sink_positions.sort();
    sink_positions.dedup();
    assert_eq!(sink_positions.len(), n, "sinks must be distinct");

    let mut occupancy = Occupancy::new(2 * n);
    let mut used_sinks = vec![false; sinks.len()];
    let mut paths: Vec<Path> = Vec::new();
    let mut out = Vec::new();
    route_source(d, 1, sinks, &mut used_sinks, &mut occupancy, &mut paths, &mut out);
    out
}

fn route_source(
    d: &Diagram,
    source: usize,
    sinks: &[usize],
    used_sinks: &mut Vec<bool>,
    occ: &mut Occupancy,
    paths: &mut Vec<Path>,
    out: &mut Vec<PathCollection>,
) {
    if source > d.n {
        out.push(PathCollection {
            paths: paths.clone(),
        });
        return;
    }
    let start = d.source_position(source);
    let mut arrows_taken = Vec::new();
    extend_path(
        d,
        source,
        start,
        0,
        sinks,
        used_sinks,
        occ,
        &mut arrows_taken,
        paths,
        out,
    );
}

#[allow(clippy::too_many_arguments)]
fn extend_path(
    d: &Diagram,
    source: usize,
    pos: usize,
    x: i64,
    sinks: &[usize],
    used_sinks: &mut Vec<bool>,
    occ: &mut Occupancy,
    taken: &mut Vec<usize>,
    paths: &mut Vec<Path>,
    out: &mut Vec<PathCollection>,
) {
    // Option 1: run to the sink edge along the current strand.
    let sink_label = d.sink_label(pos);
    if let Some(slot) = sinks
        .iter()
        .position(|&s| s == sink_label)
        .filter(|&slot| !used_sinks[slot])
    {
        if occ.is_free(pos, x, X_END) {
            used_sinks[slot] = true;
            occ.occupy(pos, x, X_END);
            paths.push(Path {
                source,
                sink: sink_label,
                arrows: taken.clone(),
            });
            route_source(d, source + 1, sinks, used_sinks, occ, paths, out);
            paths.pop();
            occ.release(pos);
            used_sinks[slot] = false;
        }
    }
    // Option 2: take a later arrow off this strand.
    for (idx, arrow) in d.arrows.iter().enumerate() {
        if arrow.tail != pos || arrow.x <= x {
            continue;
        }
        if !occ.is_free(pos, x, arrow.x) {
            continue;
        }
        occ.occupy(pos, x, arrow.x);
        taken.push(idx);
        extend_path(
            d, source, arrow.head, arrow.x, sinks, used_sinks, occ, taken, paths, out,
        );
        taken.pop();
        occ.release(pos);
    }
}

/// Sign and parameter exponents of one collection: arrow signs, crossed
/// marks, and the permutation matching source order to sink order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CollectionWeight {
    pub sign: i64,
    pub exponents: Vec<u32>,
}

pub fn collection_weight(d: &Diagram, collection: &PathCollection) -> CollectionWeight {
    let mut sign = 1i64;
    let mut exponents = vec![0u32; d.params];
    for path in &collection.paths {
        let mut pos = d.source_position(path.source);
        let mut x = 0i64;
        for &idx in &path.arrows {
            let arrow = &d.arrows[idx];
            sign *= mark_sign(d, pos, x, arrow.x);
            if arrow.negative {
                sign = -sign;
            }
            exponents[arrow.param - 1] += 1;
            pos = arrow.head;
            x = arrow.x;
        }
        sign *= mark_sign(d, pos, x, X_END);
    }
    // Permutation sign: sources are traversed in label order; rank each
    // sink within the collection's sink set ordered by label.
    let mut sink_sorted: Vec<usize> = collection.paths.iter().map(|p| p.sink).collect();
    sink_sorted.sort();
    let ranks: Vec<usize> = collection
        .paths
        .iter()
        .map(|p| sink_sorted.iter().position(|&s| s == p.sink).unwrap())
        .collect();
    let mut inversions = 0usize;
    for i in 0..ranks.len() {
        for j in i + 1..ranks.len() {
            if ranks[i] > ranks[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 1 {
        sign = -sign;
    }
    CollectionWeight { sign, exponents }
}

fn mark_sign(d: &Diagram, pos: usize, lo: i64, hi: i64) -> i64 {
    let crossed = d
        .marks
        .iter()
        .filter(|&&(p, x)| p == pos && lo < x && x < hi)
        .count();
    if crossed % 2 == 1 {
        -1
    } else {
        1
    }
}

/// Maximal minor of the point matrix in the given sink columns, evaluated
/// at concrete parameters: the signed sum over non-intersecting path
/// collections of their weight monomials.
pub fn lgv_minor(d: &Diagram, sinks: &[usize], params: &[Rat]) -> Result<Rat> {
    if params.len() != d.params {
        return Err(Error::ParamCount {
            expected: d.params,
            got: params.len(),
        });
    }
    let collections = enumerate_collections(d, sinks)?;
    let mut total = Rat::from_integer(0.into());
    for c in &collections {
        let weight = collection_weight(d, c);
        let mut term = Rat::from_integer(weight.sign.into());
        for (param, &e) in weight.exponents.iter().enumerate() {
            for _ in 0..e {
                term *= &params[param];
            }
        }
        total += term;
    }
    Ok(total)
}

/// The left greedy path collection from the sources labeled 1..n: each path
/// takes every arrow it encounters.
pub fn left_greedy(d: &Diagram) -> PathCollection {
    let mut paths = Vec::new();
    for source in 1..=d.n {
        let mut pos = d.source_position(source);
        let mut x = 0i64;
        let mut taken = Vec::new();
        loop {
            let next = d
                .arrows
                .iter()
                .enumerate()
                .filter(|(_, a)| a.tail == pos && a.x > x)
                .min_by_key(|(_, a)| a.x);
            match next {
                Some((idx, arrow)) => {
                    taken.push(idx);
                    pos = arrow.head;
                    x = arrow.x;
                }
                None => break,
            }
        }
        paths.push(Path {
            source,
            sink: d.sink_label(pos),
            arrows: taken,
        });
    }
    PathCollection { paths }
}

/// Deterministic DOT rendering: strands as left-to-right node chains,
/// arrows as labeled edges, sign marks as dashed self-chain edges.
pub fn export_dot(d: &Diagram) -> String {
    let n = d.n;
    let mut out = String::new();
    out.push_str("digraph lgv {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=point];\n");
    // Interesting x coordinates per strand position: arrow endpoints and marks.
    let mut stops: Vec<Vec<i64>> = vec![Vec::new(); 2 * n];
    for a in &d.arrows {
        stops[a.tail - 1].push(a.x);
        stops[a.head - 1].push(a.x);
    }
    for &(p, x) in &d.marks {
        stops[p - 1].push(x);
    }
    for s in &mut stops {
        s.sort();
        s.dedup();
    }
    let node = |p: usize, x: i64| format!("s{p}x{x}");
    for p in 1..=2 * n {
        let src = format!("src{p}");
        let snk = format!("snk{p}");
        out.push_str(&format!(
            "  {src} [shape=plaintext, label=\"{}\"];\n",
            d.sources[p - 1]
        ));
        out.push_str(&format!(
            "  {snk} [shape=plaintext, label=\"{}\"];\n",
            d.sink_label(p)
        ));
        let mut prev = src.clone();
        let mut prev_x = 0i64;
        for &x in &stops[p - 1] {
            let cur = node(p, x);
            let marked = d
                .marks
                .iter()
                .any(|&(mp, mx)| mp == p && prev_x < mx && mx <= x);
            if marked {
                out.push_str(&format!(
                    "  {prev} -> {cur} [style=dashed, label=\"-1\"];\n"
                ));
            } else {
                out.push_str(&format!("  {prev} -> {cur};\n"));
            }
            prev = cur;
            prev_x = x;
        }
        let tail_marked = d
            .marks
            .iter()
            .any(|&(mp, mx)| mp == p && mx > prev_x);
        if tail_marked {
            out.push_str(&format!(
                "  {prev} -> {snk} [style=dashed, label=\"-1\"];\n"
            ));
        } else {
            out.push_str(&format!("  {prev} -> {snk};\n"));
        }
    }
    for a in &d.arrows {
        let weight = if a.negative {
            format!("-t{}", a.param)
        } else {
            format!("t{}", a.param)
        };
        out.push_str(&format!(
            "  {} -> {} [label=\"{weight}\", constraint=false];\n",
            node(a.tail, a.x),
            node(a.head, a.x)
        ));
    }
    out.push_str("}\n");
    out
}
