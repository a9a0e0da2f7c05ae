//! Machine-readable artifacts: vertex and facet listings, the class table
//! in the reference column layout, and diffing against the bundled tables.

use crate::bounds::{classical_bound, ns_bound};
use crate::error::Result;
use crate::golden::GoldenRow;
use crate::quantum::{max_violation, Mode};
use crate::scalar::{format_rational, rational_to_f64};
use crate::polytope::{FacetList, VertexSet};
use crate::symmetry::{canonical_form, ClassTable};
use crate::{ExactInequality, Rational};
use serde_json::json;

/// One output row of the class table.
#[derive(Debug, Clone)]
pub struct ClassRow {
    pub class: usize,
    /// canonical representative, normalized, classical bound attached
    pub inequality: ExactInequality,
    pub orbit_size: usize,
    pub beta_ns: Option<Rational>,
    pub beta_q: Option<f64>,
    pub beta_q_ti: Option<f64>,
}

impl ClassRow {
    pub fn trivial(&self) -> bool {
        match (&self.inequality.beta_c, &self.beta_ns) {
            (Some(bc), Some(bn)) => bc == bn,
            _ => false,
        }
    }
}

pub fn vertices_csv(vs: &VertexSet) -> String {
    let mut out = String::from("components,strategy_ids\n");
    for (v, ids) in vs.vertices.iter().zip(&vs.provenance) {
        let comp: Vec<String> = v.components().iter().map(|c| c.to_string()).collect();
        let idstr: Vec<String> = ids.iter().map(|i| i.to_string()).collect();
        out.push_str(&format!("{},{}\n", comp.join(" "), idstr.join(" ")));
    }
    out
}

pub fn facets_jsonl(fl: &FacetList) -> String {
    let mut out = String::new();
    for f in &fl.facets {
        let line = json!({
            "inequality": f.inequality,
            "tight_vertices": f.tight,
        });
        out.push_str(&line.to_string());
        out.push('\n');
    }
    out
}

/// Reference layout groups coefficients by distance:
/// `gamma_k, omega_k, omega_(n-k), eps_k` per k, the far omega omitted when
/// it coincides with the near one.
fn coefficient_columns(n: usize) -> Vec<String> {
    let mut cols = Vec::new();
    for k in 1..=n / 2 {
        cols.push(format!("gamma{k}"));
        cols.push(format!("omega{k}"));
        if k != n - k {
            cols.push(format!("omega{}", n - k));
        }
        cols.push(format!("epsilon{k}"));
    }
    cols
}

fn coefficient_values(q: &ExactInequality) -> Vec<Rational> {
    let n = q.n;
    let mut vals = Vec::new();
    for k in 1..=n / 2 {
        vals.push(q.gamma[k - 1].clone());
        vals.push(q.omega[k - 1].clone());
        if k != n - k {
            vals.push(q.omega[n - k - 1].clone());
        }
        vals.push(q.epsilon[k - 1].clone());
    }
    vals
}

/// Rows of the class table (numbering follows the classification sort).
pub fn class_rows(table: &ClassTable) -> Vec<ClassRow> {
    table
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| ClassRow {
            class: i + 1,
            inequality: c.canonical.clone(),
            orbit_size: c.orbit_size,
            beta_ns: None,
            beta_q: None,
            beta_q_ti: None,
        })
        .collect()
}

/// Fills the nonsignalling column (exact); classical bounds are recomputed
/// and must agree with the facet data.
pub fn fill_ns_bounds(rows: &mut [ClassRow]) -> Result<()> {
    for row in rows.iter_mut() {
        let (bc, _) = classical_bound(&row.inequality)?;
        if let Some(prev) = &row.inequality.beta_c {
            assert_eq!(*prev, bc, "classical bound mismatch on class {}", row.class);
        }
        row.inequality.beta_c = Some(bc);
        row.beta_ns = Some(ns_bound(&row.inequality)?.beta_n);
    }
    Ok(())
}

/// Fills the quantum columns (best-found lower bounds).
pub fn fill_quantum(rows: &mut [ClassRow], starts: usize, seed: u64) -> Result<()> {
    for row in rows.iter_mut() {
        let qf = row.inequality.to_float();
        let free = max_violation(&qf, Mode::Free, starts, seed ^ row.class as u64)?;
        let ti = max_violation(&qf, Mode::TiRestricted, starts, seed ^ (row.class as u64) << 16)?;
        row.beta_q = Some(free.beta.max(ti.beta));
        row.beta_q_ti = Some(ti.beta);
    }
    Ok(())
}

pub fn table_csv(n: usize, rows: &[ClassRow]) -> String {
    let mut header = vec![
        "class".to_string(),
        "beta_ns".to_string(),
        "beta_q".to_string(),
        "beta_q_ti".to_string(),
        "beta_c".to_string(),
        "alpha".to_string(),
        "beta".to_string(),
    ];
    header.extend(coefficient_columns(n));
    header.push("orbit_size".to_string());
    header.push("trivial".to_string());
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let mut f: Vec<String> = vec![
            row.class.to_string(),
            row.beta_ns.as_ref().map(format_rational).unwrap_or_default(),
            row.beta_q.map(|v| format!("{v:.2}")).unwrap_or_default(),
            row.beta_q_ti.map(|v| format!("{v:.2}")).unwrap_or_default(),
            row.inequality.beta_c.as_ref().map(format_rational).unwrap_or_default(),
            format_rational(&row.inequality.alpha),
            format_rational(&row.inequality.beta),
        ];
        f.extend(coefficient_values(&row.inequality).iter().map(format_rational));
        f.push(row.orbit_size.to_string());
        f.push(if row.trivial() { "1".into() } else { "0".into() });
        out.push_str(&f.join(","));
        out.push('\n');
    }
    out
}

/// Compares computed rows against the bundled reference by canonical
/// coefficient tuple; returns human-readable mismatch lines (empty = clean).
///
/// Exact columns compare exactly; quantum columns within `tol` (reference
/// prints two decimals).
pub fn diff_against_golden(
    rows: &[ClassRow],
    golden: &[GoldenRow],
    with_extension: bool,
    tol: f64,
) -> Vec<String> {
    let mut problems = Vec::new();
    if rows.len() != golden.len() {
        problems.push(format!("class count {} vs reference {}", rows.len(), golden.len()));
    }
    for g in golden {
        let canon = canonical_form(&g.inequality, with_extension);
        let key = canon.coefficients();
        let Some(row) = rows.iter().find(|r| r.inequality.coefficients() == key) else {
            problems.push(format!("reference class {} has no computed match", g.class));
            continue;
        };
        if row.inequality.beta_c.as_ref() != Some(&g.beta_c) {
            problems.push(format!("reference class {}: beta_c mismatch", g.class));
        }
        if let (Some(want), Some(got)) = (&g.beta_ns, &row.beta_ns) {
            if want != got {
                problems.push(format!(
                    "reference class {}: beta_ns {} vs {}",
                    g.class,
                    format_rational(got),
                    format_rational(want)
                ));
            }
        }
        let float_check = |name: &str, want: Option<f64>, got: Option<f64>| -> Option<String> {
            match (want, got) {
                (Some(w), Some(v)) if (w - v).abs() > tol => Some(format!(
                    "reference class {}: {name} {v:.3} vs {w:.2}",
                    g.class
                )),
                _ => None,
            }
        };
        problems.extend(float_check("beta_q", g.beta_q, row.beta_q));
        problems.extend(float_check("beta_q_ti", g.beta_q_ti, row.beta_q_ti));
    }
    problems
}

/// Convenience accessor: the computed row matching a reference row.
pub fn match_golden<'a>(
    rows: &'a [ClassRow],
    g: &GoldenRow,
    with_extension: bool,
) -> Option<&'a ClassRow> {
    let key = canonical_form(&g.inequality, with_extension).coefficients();
    rows.iter().find(|r| r.inequality.coefficients() == key)
}

/// NS bound certificate serialized for audit.
pub fn ns_certificate_json(q: &ExactInequality) -> Result<String> {
    let ns = ns_bound(q)?;
    let witness: Vec<f64> = ns.witness.entries.iter().map(rational_to_f64).collect();
    let doc = json!({
        "beta_ns": format_rational(&ns.beta_n),
        "certificate": ns.certificate.iter().map(format_rational).collect::<Vec<_>>(),
        "witness": witness,
        "verified": ns.verify(q),
    });
    Ok(serde_json::to_string_pretty(&doc)?)
}
