//! Rendering of reports as text tables, CSV, and round-trip-stable JSON.
//! Exact rationals always travel as `{"num": p, "den": q}` in lowest terms;
//! decimals are display-only, rounded half to even at the requested
//! precision.

use serde_json::{json, Value};

use crate::families::{Check, CheckStatus, FamilyReport};
use crate::harbourne::{Attainment, HReport, Witness};
use crate::incidence::ConfigurationParams;
use crate::rational::{decimal_string, exact_string, rat_to_json, Rat};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected text, csv or json)")),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RenderOptions {
    pub format: Format,
    pub precision: u32,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            format: Format::Text,
            precision: 6,
        }
    }
}

fn rat_cell(r: &Rat, precision: u32) -> String {
    format!("{} (≈ {})", exact_string(r), decimal_string(r, precision))
}

fn status_str(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Warn => "warn",
        CheckStatus::Fail => "FAIL",
    }
}

fn witness_json(w: &Witness) -> Value {
    json!({
        "singular_points": w.singular_points,
        "smooth_points": w.smooth_points,
        "off_curve_points": w.off_curve_points,
        "attainment": match w.attainment {
            Attainment::Exact => "exact",
            Attainment::Asymptotic => "asymptotic",
        },
    })
}

fn opt_rat_json(r: &Option<Rat>, precision: u32) -> Result<Value> {
    Ok(match r {
        Some(r) => json!({
            "exact": rat_to_json(r)?,
            "decimal": decimal_string(r, precision),
        }),
        None => Value::Null,
    })
}

fn h_report_json(h: &HReport, precision: u32) -> Result<Value> {
    Ok(json!({
        "h_local": opt_rat_json(&h.h_local, precision)?,
        "h_global": opt_rat_json(&Some(h.h_global), precision)?,
        "hadean": opt_rat_json(&h.hadean, precision)?,
        "witness": witness_json(&h.witness),
    }))
}

fn checks_json(checks: &[Check]) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "status": status_str(c.status).to_lowercase(),
                    "detail": c.detail,
                })
            })
            .collect(),
    )
}

pub fn family_json(report: &FamilyReport, checks: &[Check], precision: u32) -> Result<Value> {
    let components: Result<Vec<Value>> = report
        .components
        .iter()
        .map(|c| {
            Ok(json!({
                "name": c.name,
                "self_int": rat_to_json(&c.self_int)?,
                "marked_points": c.marked_points,
            }))
        })
        .collect();
    Ok(json!({
        "family": report.spec.name.to_string(),
        "parameter": report.spec.parameter,
        "surface": match report.surface {
            crate::families::Surface::Abelian => "abelian",
            crate::families::Surface::Kummer => "kummer",
        },
        "components": components?,
        "singular_points": report.singular_points.iter().map(|(m, c)| json!({
            "multiplicity": m,
            "count": c,
        })).collect::<Vec<_>>(),
        "total_self_int": rat_to_json(&report.lattice_total_self_int)?,
        "h": h_report_json(&report.h_report, precision)?,
        "axioms": report.axioms,
        "checks": checks_json(checks),
    }))
}

pub fn render_family(
    report: &FamilyReport,
    checks: &[Check],
    opts: &RenderOptions,
) -> Result<String> {
    match opts.format {
        Format::Json => Ok(to_stable_json(&family_json(report, checks, opts.precision)?)),
        Format::Csv => {
            let mut out = String::from("component,self_int,marked_points\n");
            for c in &report.components {
                out.push_str(&format!(
                    "{},{},{}\n",
                    c.name,
                    exact_string(&c.self_int),
                    c.marked_points
                ));
            }
            out.push_str("quantity,exact,decimal\n");
            if let Some(h) = &report.h_report.h_local {
                out.push_str(&format!(
                    "h_local,{},{}\n",
                    exact_string(h),
                    decimal_string(h, opts.precision)
                ));
            }
            out.push_str(&format!(
                "h_global,{},{}\n",
                exact_string(&report.h_report.h_global),
                decimal_string(&report.h_report.h_global, opts.precision)
            ));
            Ok(out)
        }
        Format::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "family {} ({}={}, {} surface)\n",
                report.spec.name,
                report.spec.name.parameter_name(),
                report.spec.parameter,
                match report.surface {
                    crate::families::Surface::Abelian => "abelian",
                    crate::families::Surface::Kummer => "kummer",
                }
            ));
            out.push_str("components:\n");
            for c in &report.components {
                out.push_str(&format!(
                    "  {:<10} self-int {:<12} marked points {}\n",
                    c.name,
                    exact_string(&c.self_int),
                    c.marked_points
                ));
            }
            out.push_str("singular points:");
            for (m, count) in &report.singular_points {
                out.push_str(&format!(" {count} of multiplicity {m}"));
            }
            out.push('\n');
            out.push_str(&format!(
                "total self-intersection: {}\n",
                rat_cell(&report.lattice_total_self_int, opts.precision)
            ));
            if let Some(h) = &report.h_report.h_local {
                out.push_str(&format!("H(C, Sing C) = {}\n", rat_cell(h, opts.precision)));
            }
            out.push_str(&format!(
                "H(C)         = {}\n",
                rat_cell(&report.h_report.h_global, opts.precision)
            ));
            if let Some(h) = &report.h_report.hadean {
                out.push_str(&format!("Hadean       = {}\n", rat_cell(h, opts.precision)));
            }
            out.push_str("axioms:\n");
            for a in &report.axioms {
                out.push_str(&format!("  - {a}\n"));
            }
            if !checks.is_empty() {
                out.push_str("checks:\n");
                for c in checks {
                    out.push_str(&format!("  [{}] {}: {}\n", status_str(c.status), c.name, c.detail));
                }
            }
            Ok(out)
        }
    }
}

pub struct TableRow {
    pub parameter: i64,
    pub component_self_ints: Vec<Rat>,
    pub singular_point_count: u64,
    pub h: Rat,
}

pub fn table_json(family: &str, rows: &[TableRow], precision: u32) -> Result<Value> {
    let rendered: Result<Vec<Value>> = rows
        .iter()
        .map(|r| {
            let comps: Result<Vec<Value>> = r.component_self_ints.iter().map(rat_to_json).collect();
            Ok(json!({
                "parameter": r.parameter,
                "component_self_ints": comps?,
                "singular_point_count": r.singular_point_count,
                "h": rat_to_json(&r.h)?,
                "h_decimal": decimal_string(&r.h, precision),
            }))
        })
        .collect();
    Ok(json!({ "family": family, "rows": rendered? }))
}

/// Deduplicated `count×value` rendering of the component self-intersections.
fn summarize_self_ints(vals: &[Rat]) -> String {
    let mut groups: Vec<(Rat, usize)> = Vec::new();
    for v in vals {
        match groups.iter_mut().find(|(g, _)| g == v) {
            Some((_, c)) => *c += 1,
            None => groups.push((*v, 1)),
        }
    }
    groups
        .iter()
        .map(|(v, c)| {
            if *c == 1 {
                exact_string(v)
            } else {
                format!("{c}x{}", exact_string(v))
            }
        })
        .collect::<Vec<_>>()
        .join(";")
}

pub fn render_table(family: &str, rows: &[TableRow], opts: &RenderOptions) -> Result<String> {
    match opts.format {
        Format::Json => Ok(to_stable_json(&table_json(family, rows, opts.precision)?)),
        Format::Csv => {
            let mut out = String::from("parameter,component_self_ints,singular_points,h_exact,h_decimal\n");
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.parameter,
                    summarize_self_ints(&r.component_self_ints),
                    r.singular_point_count,
                    exact_string(&r.h),
                    decimal_string(&r.h, opts.precision)
                ));
            }
            Ok(out)
        }
        Format::Text => {
            let mut out = format!("family {family}\n");
            out.push_str(&format!(
                "{:>5}  {:<24} {:>14}  {:<14} {}\n",
                "param", "self-ints", "sing points", "H exact", "H decimal"
            ));
            for r in rows {
                out.push_str(&format!(
                    "{:>5}  {:<24} {:>14}  {:<14} {}\n",
                    r.parameter,
                    summarize_self_ints(&r.component_self_ints),
                    r.singular_point_count,
                    exact_string(&r.h),
                    decimal_string(&r.h, opts.precision)
                ));
            }
            Ok(out)
        }
    }
}

pub struct HcOutput {
    pub report: HReport,
    pub oracle: Option<(Rat, bool)>,
}

pub fn render_hc(out: &HcOutput, opts: &RenderOptions) -> Result<String> {
    match opts.format {
        Format::Json => {
            let oracle = match &out.oracle {
                Some((v, agrees)) => json!({
                    "value": rat_to_json(v)?,
                    "decimal": decimal_string(v, opts.precision),
                    "agrees": agrees,
                }),
                None => Value::Null,
            };
            let mut v = h_report_json(&out.report, opts.precision)?;
            v["oracle"] = oracle;
            Ok(to_stable_json(&v))
        }
        Format::Csv => {
            let mut outs = String::from("quantity,exact,decimal\n");
            if let Some(h) = &out.report.h_local {
                outs.push_str(&format!(
                    "h_local,{},{}\n",
                    exact_string(h),
                    decimal_string(h, opts.precision)
                ));
            }
            outs.push_str(&format!(
                "h_global,{},{}\n",
                exact_string(&out.report.h_global),
                decimal_string(&out.report.h_global, opts.precision)
            ));
            if let Some(h) = &out.report.hadean {
                outs.push_str(&format!(
                    "hadean,{},{}\n",
                    exact_string(h),
                    decimal_string(h, opts.precision)
                ));
            }
            if let Some((v, agrees)) = &out.oracle {
                outs.push_str(&format!(
                    "oracle,{},{}\n",
                    exact_string(v),
                    if *agrees { "agrees" } else { "DISAGREES" }
                ));
            }
            Ok(outs)
        }
        Format::Text => {
            let mut s = String::new();
            if let Some(h) = &out.report.h_local {
                s.push_str(&format!("H(C, Sing C) = {}\n", rat_cell(h, opts.precision)));
            }
            s.push_str(&format!(
                "H(C)         = {}\n",
                rat_cell(&out.report.h_global, opts.precision)
            ));
            if let Some(h) = &out.report.hadean {
                s.push_str(&format!("Hadean       = {}\n", rat_cell(h, opts.precision)));
            }
            let w = &out.report.witness;
            s.push_str(&format!(
                "witness: {} singular + {} smooth + {} off-curve points ({})\n",
                w.singular_points,
                w.smooth_points,
                w.off_curve_points,
                match w.attainment {
                    Attainment::Exact => "attained",
                    Attainment::Asymptotic => "asymptotic: b → ∞ smooth points",
                }
            ));
            if let Some((v, agrees)) = &out.oracle {
                s.push_str(&format!(
                    "brute-force oracle: {} — {}\n",
                    rat_cell(v, opts.precision),
                    if *agrees { "agrees" } else { "DISAGREES" }
                ));
            }
            Ok(s)
        }
    }
}

pub struct DesignOutput {
    pub kind: String,
    pub params: ConfigurationParams,
    pub lambda: u64,
    pub identity_holds: bool,
}

pub fn render_design(out: &DesignOutput, opts: &RenderOptions) -> Result<String> {
    match opts.format {
        Format::Json => Ok(to_stable_json(&json!({
            "kind": out.kind,
            "curves": out.params.curves,
            "points_per_curve": out.params.points_per_curve,
            "points": out.params.points,
            "curves_per_point": out.params.curves_per_point,
            "lambda": out.lambda,
            "identity_holds": out.identity_holds,
        }))),
        Format::Csv => Ok(format!(
            "kind,curves,points_per_curve,points,curves_per_point,lambda,identity_holds\n{},{},{},{},{},{},{}\n",
            out.kind,
            out.params.curves,
            out.params.points_per_curve,
            out.params.points,
            out.params.curves_per_point,
            out.lambda,
            out.identity_holds
        )),
        Format::Text => {
            let p = &out.params;
            Ok(format!(
                "design {}: ({}_{}, {}_{}) of type λ = {}\nidentity m(n−1) = λ(a−1): {} = {} — {}\n",
                out.kind,
                p.curves,
                p.points_per_curve,
                p.points,
                p.curves_per_point,
                out.lambda,
                p.curves_per_point * (p.points_per_curve - 1),
                out.lambda * (p.curves - 1),
                if out.identity_holds { "pass" } else { "FAIL" }
            ))
        }
    }
}

/// Canonical JSON byte form: serde_json with insertion-ordered maps. Parsing
/// this output and re-serializing it reproduces the bytes exactly.
pub fn to_stable_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable value")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn json_round_trip_is_stable() {
        let v = json!({"b": 1, "a": {"z": rat_to_json(&Rat::new(-64, 15)).unwrap(), "y": 2}});
        let s = to_stable_json(&v);
        let reparsed: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(to_stable_json(&reparsed), s);
        // insertion order is preserved, not sorted
        assert!(s.find("\"b\"").unwrap() < s.find("\"a\"").unwrap());
    }

    #[test]
    fn self_int_summary() {
        let vals = vec![rat(13), rat(16), rat(16), rat(16)];
        assert_eq!(summarize_self_ints(&vals), "13;3x16");
    }
}
