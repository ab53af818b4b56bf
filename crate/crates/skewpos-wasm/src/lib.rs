//! Browser demo bindings: check a matrix, sample a cell, and draw the
//! path diagram as SVG. Everything returns JSON or SVG strings so the page
//! stays framework-free.

use wasm_bindgen::prelude::wasm_bindgen;

use skewpos::cells::{identify_cell, sample_cell, CellLabel};
use skewpos::error::Error;
use skewpos::exact::{parse_rat, Rat};
use skewpos::group::{marsh_rietsch, ChartPoint};
use skewpos::lgv::{build_boundary, build_top, Diagram};
use skewpos::pfaffian;
use skewpos::positivity::{is_totally_nonnegative, is_totally_positive, SkewMatrix};
use skewpos::rng::SplitMix64;
use skewpos::weyl::w0_coset_word;

fn err_json(e: &Error) -> String {
    format!("{{\"error\": {:?}}}", e.to_string())
}

fn parse_matrix(json: &str) -> Result<SkewMatrix, Error> {
    let value: serde_json::Value =
        serde_json::from_str(json).map_err(|e| Error::Parse(format!("bad matrix JSON: {e}")))?;
    let n = value["n"]
        .as_u64()
        .ok_or_else(|| Error::Parse("missing field 'n'".into()))? as usize;
    let entries = value["entries"]
        .as_array()
        .ok_or_else(|| Error::Parse("missing field 'entries'".into()))?;
    if entries.len() != n {
        return Err(Error::Parse(format!("expected {n} rows")));
    }
    let mut rows = Vec::with_capacity(n);
    for row in entries {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse("rows must be arrays".into()))?;
        if row.len() != n {
            return Err(Error::Parse(format!("expected {n} columns")));
        }
        rows.push(
            row.iter()
                .map(|c| {
                    c.as_str()
                        .ok_or_else(|| Error::Parse("entries must be strings".into()))
                        .and_then(parse_rat)
                })
                .collect::<Result<Vec<Rat>, Error>>()?,
        );
    }
    SkewMatrix::from_rows(rows)
}

fn matrix_to_json(a: &SkewMatrix) -> serde_json::Value {
    let n = a.rank();
    let entries: Vec<Vec<String>> = (1..=n)
        .map(|i| (1..=n).map(|j| a.entry(i, j).to_string()).collect())
        .collect();
    serde_json::json!({"entries": entries, "n": n})
}

/// Full report on a skew matrix: minor table, positivity and nonnegativity
/// verdicts, Pfaffian signs, and the cell when identifiable.
#[wasm_bindgen]
pub fn check_matrix(matrix_json: &str) -> String {
    match check_matrix_impl(matrix_json) {
        Ok(v) => v,
        Err(e) => err_json(&e),
    }
}

fn check_matrix_impl(matrix_json: &str) -> Result<String, Error> {
    let a = parse_matrix(matrix_json)?;
    let (positive, table) = is_totally_positive(&a)?;
    let report = is_totally_nonnegative(&a)?;
    let pattern = pfaffian::check_sign_pattern(&a)?;
    let minors: Vec<serde_json::Value> = table
        .values
        .iter()
        .map(|((j, k), v)| serde_json::json!({"j": j, "k": k, "value": v.to_string()}))
        .collect();
    let leading: Vec<serde_json::Value> = report
        .leading
        .iter()
        .map(|((j, k), term)| match term {
            Some((deg, coeff)) => serde_json::json!({
                "j": j, "k": k, "degree": deg, "coefficient": coeff.to_string()
            }),
            None => serde_json::json!({"j": j, "k": k, "vanishes": true}),
        })
        .collect();
    let cell = identify_cell(&ChartPoint::from_skew(&a), false)
        .map(|label| label.to_string())
        .ok();
    Ok(serde_json::json!({
        "cell": cell,
        "leading": leading,
        "minors": minors,
        "nonnegative_verdict": report.verdict.to_string(),
        "pfaffian_pattern_nonnegative": pattern.nonnegative,
        "pfaffian_pattern_strict": pattern.strict,
        "positive": positive,
        "witness": report.witness.map(|(j, k)| serde_json::json!({"j": j, "k": k})),
    })
    .to_string())
}

/// Samples the dense cell (empty label) or a named cell at seeded-random
/// positive parameters and reports the matrix with its identified cell.
#[wasm_bindgen]
pub fn sample_matrix(n: usize, cell: &str, seed: u64) -> String {
    match sample_matrix_impl(n, cell, seed) {
        Ok(v) => v,
        Err(e) => err_json(&e),
    }
}

fn sample_matrix_impl(n: usize, cell: &str, seed: u64) -> Result<String, Error> {
    let mut rng = SplitMix64::new(seed);
    let (point, label_text) = if cell.trim().is_empty() {
        let count = w0_coset_word(n).len();
        let t: Vec<Rat> = (0..count).map(|_| rng.rat_positive()).collect();
        (marsh_rietsch(n, &t)?, None)
    } else {
        let label = CellLabel::parse(n, cell)?;
        let t: Vec<Rat> = (0..label.dimension()).map(|_| rng.rat_positive()).collect();
        (sample_cell(&label, &t)?, Some(label.to_string()))
    };
    let a = point.chart()?;
    let identified = identify_cell(&ChartPoint::from_skew(&a), false)?;
    Ok(serde_json::json!({
        "cell": identified.to_string(),
        "matrix": matrix_to_json(&a),
        "requested": label_text,
    })
    .to_string())
}

/// SVG drawing of the path diagram of the dense cell, or of a boundary
/// cell when a label is given.
#[wasm_bindgen]
pub fn diagram_svg(n: usize, cell: &str) -> String {
    match diagram_svg_impl(n, cell) {
        Ok(v) => v,
        Err(e) => format!(
            "<svg xmlns='http://www.w3.org/2000/svg'><text x='8' y='16' fill='red'>{e}</text></svg>"
        ),
    }
}

fn diagram_svg_impl(n: usize, cell: &str) -> Result<String, Error> {
    let d = if cell.trim().is_empty() {
        build_top(n)
    } else {
        let label = CellLabel::parse(n, cell)?;
        build_boundary(label.v(), label.w())?
    };
    Ok(render_svg(&d))
}

/// DOT text of the same diagram, for copy and paste.
#[wasm_bindgen]
pub fn diagram_dot(n: usize, cell: &str) -> String {
    match diagram_dot_impl(n, cell) {
        Ok(v) => v,
        Err(e) => format!("// {e}"),
    }
}

fn diagram_dot_impl(n: usize, cell: &str) -> Result<String, Error> {
    let d = if cell.trim().is_empty() {
        build_top(n)
    } else {
        let label = CellLabel::parse(n, cell)?;
        build_boundary(label.v(), label.w())?
    };
    Ok(skewpos::lgv::export_dot(&d))
}

fn render_svg(d: &Diagram) -> String {
    let n = d.rank();
    let strands = 2 * n;
    let max_x = d
        .arrows()
        .iter()
        .map(|a| a.x)
        .chain(d.marks().iter().map(|&(_, x)| x))
        .max()
        .unwrap_or(2);
    let col = 46.0;
    let row = 34.0;
    let left = 54.0;
    let top = 26.0;
    let width = left * 2.0 + (max_x as f64 + 2.0) * col;
    let height = top * 2.0 + (strands as f64) * row;
    // Position p (bottom to top) maps to a descending y coordinate.
    let y_of = |p: usize| top + (strands - p) as f64 * row;
    let x_of = |x: i64| left + (x as f64 + 1.0) * col;
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns='http://www.w3.org/2000/svg' viewBox='0 0 {width:.0} {height:.0}' font-family='monospace' font-size='13'>\n"
    ));
    svg.push_str(
        "<defs><marker id='tip' markerWidth='7' markerHeight='7' refX='5' refY='3.5' orient='auto'>\
         <polygon points='0 0, 6 3.5, 0 7' fill='#555'/></marker></defs>\n",
    );
    let right_edge = x_of(max_x + 1);
    for p in 1..=strands {
        let y = y_of(p);
        svg.push_str(&format!(
            "<line x1='{left:.1}' y1='{y:.1}' x2='{right_edge:.1}' y2='{y:.1}' stroke='#888' stroke-width='1'/>\n"
        ));
        svg.push_str(&format!(
            "<text x='{:.1}' y='{:.1}' text-anchor='end' fill='#333'>{}</text>\n",
            left - 8.0,
            y + 4.0,
            d.sources()[p - 1]
        ));
        svg.push_str(&format!(
            "<text x='{:.1}' y='{:.1}' fill='#333'>{}</text>\n",
            right_edge + 8.0,
            y + 4.0,
            d.sink_label(p)
        ));
    }
    for a in d.arrows() {
        let x = x_of(a.x);
        let (y1, y2) = (y_of(a.tail), y_of(a.head));
        let color = if a.negative { "#c0392b" } else { "#2471a3" };
        if a.head == a.tail + 1 {
            svg.push_str(&format!(
                "<line x1='{x:.1}' y1='{y1:.1}' x2='{x:.1}' y2='{y2:.1}' stroke='{color}' stroke-width='2' marker-end='url(#tip)'/>\n"
            ));
        } else {
            // Skipping arrows bow out so crossings stay readable.
            let bend = x + 14.0;
            let mid = (y1 + y2) / 2.0;
            svg.push_str(&format!(
                "<path d='M {x:.1} {y1:.1} Q {bend:.1} {mid:.1} {x:.1} {y2:.1}' fill='none' stroke='{color}' stroke-width='2' marker-end='url(#tip)'/>\n"
            ));
        }
        let sign = if a.negative { "-" } else { "" };
        svg.push_str(&format!(
            "<text x='{:.1}' y='{:.1}' fill='{color}'>{sign}t{}</text>\n",
            x + 4.0,
            (y1 + y2) / 2.0 + 4.0,
            a.param
        ));
    }
    for &(p, x) in d.marks() {
        svg.push_str(&format!(
            "<text x='{:.1}' y='{:.1}' fill='#b7950b' font-weight='bold'>-1</text>\n",
            x_of(x) - 6.0,
            y_of(p) - 6.0
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = r#"{"n": 4, "entries": [["0","0","0","2"],["0","0","0","0"],["0","0","0","2"],["-2","0","-2","0"]]}"#;

    #[test]
    fn check_matrix_reports_cell_and_verdict() {
        let out = check_matrix(A2);
        assert!(out.contains("\"nonnegative_verdict\":\"nonnegative-boundary\""), "{out}");
        assert!(out.contains("\"cell\":\"2134;2385\""), "{out}");
        assert!(out.contains("\"positive\":false"), "{out}");
        assert!(check_matrix("{\"n\": 1}").contains("error"));
    }

    #[test]
    fn sample_matrix_round_trips() {
        let out = sample_matrix(4, "", 9);
        assert!(out.contains("\"cell\":\"1234;8765\""), "{out}");
        let out = sample_matrix(4, "2134;2385", 9);
        assert!(out.contains("\"cell\":\"2134;2385\""), "{out}");
    }

    #[test]
    fn svg_and_dot_render() {
        let svg = diagram_svg(4, "");
        assert!(svg.starts_with("<svg"));
        let arrow_elements = svg.matches("stroke-width='2'").count();
        assert_eq!(arrow_elements, 12, "two arrows per letter");
        let boundary = diagram_svg(4, "2134;2385");
        assert!(boundary.contains(">-1<"), "boundary marks rendered");
        assert!(diagram_dot(4, "").starts_with("digraph lgv"));
        assert!(diagram_svg(4, "bogus").contains("<text"));
    }
}
