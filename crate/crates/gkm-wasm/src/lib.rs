//! Browser bindings: a labeled-graph picture, a per-degree rank table and
//! the degree-6 class that is not an integral polynomial in the canonical
//! generators.  Everything returns strings (SVG or JSON) so the page needs
//! no framework; the same inner functions are unit-tested natively.

use std::f64::consts::TAU;
use std::sync::Arc;

use wasm_bindgen::prelude::*;

use gkm_core::cohomology::{graded_basis, hilbert_closed_form};
use gkm_core::gkmgraph::{build_family, Family};
use gkm_core::presentation::{c2_counterexample, theorem_ring};
use gkm_core::{Error, Limits};

fn graph_svg_inner(family: &str, n: usize) -> Result<String, Error> {
    let limits = Limits::default();
    let family = Family::parse(family)?;
    let g = build_family(family, n, &limits)?;
    let nv = g.num_vertices();
    if nv > 120 {
        return Err(Error::Usage(format!(
            "{} vertices is too many to draw; pick a smaller rank",
            nv
        )));
    }
    let (cx, cy, r) = (260.0, 260.0, 210.0);
    let pos: Vec<(f64, f64)> = (0..nv)
        .map(|i| {
            let a = TAU * i as f64 / nv as f64 - TAU / 4.0;
            (cx + r * a.cos(), cy + r * a.sin())
        })
        .collect();
    let mut svg = String::from(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 520 520\" \
         font-family=\"monospace\" font-size=\"11\">\n",
    );
    for e in g.edges() {
        let (x1, y1) = pos[e.a];
        let (x2, y2) = pos[e.b];
        svg.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" \
             stroke=\"#8894a8\" stroke-width=\"1\"><title>{} -- {}: {}</title></line>\n",
            x1,
            y1,
            x2,
            y2,
            g.vertex_name(e.a),
            g.vertex_name(e.b),
            e.label
        ));
    }
    for (i, &(x, y)) in pos.iter().enumerate() {
        svg.push_str(&format!(
            "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"3.5\" fill=\"#1f3a5f\"/>\n\
             <text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" fill=\"#1f3a5f\">{}</text>\n",
            x,
            y,
            x,
            y - 7.0,
            g.vertex_name(i)
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn rank_table_inner(family: &str, n: usize, max_k: usize) -> Result<String, Error> {
    let limits = Limits::default();
    let family = Family::parse(family)?;
    if max_k > 6 {
        return Err(Error::Usage("degree capped at 12 in the browser".into()));
    }
    let ring = theorem_ring(family);
    let g = Arc::new(build_family(family, n, &limits)?);
    let closed = hilbert_closed_form(family, n, max_k)?;
    let mut rows = Vec::new();
    let mut all_match = true;
    for k in 0..=max_k {
        let computed = graded_basis(&g, k, ring, &limits)?.rank();
        let matches = closed.coeffs[k] == computed.into();
        all_match &= matches;
        rows.push(serde_json::json!({
            "k": k,
            "computed": computed,
            "closed_form": closed.coeffs[k].to_string(),
            "match": matches,
        }));
    }
    Ok(serde_json::json!({
        "family": family.name(),
        "n": n,
        "ring": ring.name(),
        "rows": rows,
        "all_match": all_match,
    })
    .to_string())
}

fn counterexample_inner() -> Result<String, Error> {
    let limits = Limits::default();
    let c = c2_counterexample(&limits)?;
    let values: Vec<serde_json::Value> = (0..c.graph.num_vertices())
        .map(|v| {
            serde_json::json!({
                "vertex": c.graph.vertex_name(v),
                "value": c.class.value(v).to_string(),
            })
        })
        .collect();
    Ok(serde_json::json!({
        "degree": 6,
        "values": values,
        "member_over_int": c.member_over_int,
        "in_generator_span": c.in_generator_lattice,
        "double_in_generator_span": c.double_in_lattice,
        "equals_half_product": c.equals_half_product,
    })
    .to_string())
}

/// SVG picture of the labeled graph, vertices on a circle.
#[wasm_bindgen]
pub fn graph_svg(family: &str, n: usize) -> Result<String, JsValue> {
    graph_svg_inner(family, n).map_err(|e| JsValue::from_str(&e.to_string()))
}

/// Rank table as JSON, computed ranks against the closed form.
#[wasm_bindgen]
pub fn rank_table_json(family: &str, n: usize, max_k: usize) -> Result<String, JsValue> {
    rank_table_inner(family, n, max_k).map_err(|e| JsValue::from_str(&e.to_string()))
}

/// The explicit degree-6 class outside the integral generator span.
#[wasm_bindgen]
pub fn counterexample_json() -> Result<String, JsValue> {
    counterexample_inner().map_err(|e| JsValue::from_str(&e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn svg_has_one_line_per_edge() {
        let svg = graph_svg_inner("A", 3).unwrap();
        assert_eq!(svg.matches("<line ").count(), 9);
        assert_eq!(svg.matches("<circle ").count(), 6);
        assert!(svg.contains("t1-t2"));
        assert!(graph_svg_inner("B", 4).is_err());
        assert!(graph_svg_inner("E", 2).is_err());
    }

    #[test]
    fn rank_table_agrees_with_the_closed_form() {
        let v: serde_json::Value =
            serde_json::from_str(&rank_table_inner("B", 2, 3).unwrap()).unwrap();
        assert_eq!(v["all_match"], serde_json::json!(true));
        assert_eq!(v["rows"][3]["computed"], serde_json::json!(16));
        assert_eq!(v["ring"], serde_json::json!("Int"));
    }

    #[test]
    fn counterexample_flags_survive_the_trip() {
        let v: serde_json::Value =
            serde_json::from_str(&counterexample_inner().unwrap()).unwrap();
        assert_eq!(v["member_over_int"], serde_json::json!(true));
        assert_eq!(v["in_generator_span"], serde_json::json!(false));
        assert_eq!(v["double_in_generator_span"], serde_json::json!(true));
        assert_eq!(v["equals_half_product"], serde_json::json!(true));
    }
}
