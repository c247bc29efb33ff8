use std::path::{Path, PathBuf};

use num_rational::BigRational;
use serde_json::{json, Value};
use thiserror::Error;

use scrollflex_core::chern::{rank_profile, segre_closed_form, segre_term};
use scrollflex_core::formulas::{classify_uninflected, inflectional_class, inflectional_degree};
use scrollflex_core::scanner::{
    cross_validate, cross_validate_curve, rank_scan, wronskian_weights, CrossValidation,
    DivisorComponent, RationalCurve, SampleSpec, ScanReport, Verdict, WeightedLocusReport,
    WronskianReport,
};
use scrollflex_core::{Classification, Coefficient, DecomposableScroll, Moduli, ScrollParams};

use crate::output::{answer, point, rational, Output};
use crate::{Command, Invariants, Sampling};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] scrollflex_core::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(command: Command) -> Result<Output> {
    match command {
        Command::Class(inv) => class(&inv),
        Command::Degree(inv) => degree(&inv),
        Command::VerifyTheorem3 { max_n, max_k } => verify(max_n, max_k),
        Command::Classify { n, k, ell } => classify(n, k, ell),
        Command::Scan {
            scroll,
            k,
            sampling,
        } => scan(&scroll, k, &sampling),
        Command::Wronskian { degrees, basis, k } => {
            wronskian(degrees.as_deref(), basis.as_deref(), k)
        }
        Command::CrossValidate {
            scroll,
            basis,
            k,
            sampling,
        } => validate(scroll.as_deref(), basis.as_deref(), k, &sampling),
        Command::Ranks { n, k } => ranks(n, k),
    }
}

fn invariant_inputs(out: &mut Output, inv: &Invariants) -> Result<ScrollParams> {
    out.input("n", inv.n).input("ambient", inv.ambient);
    if let (Some(d), Some(g)) = (inv.d, inv.g) {
        out.input("d", d).input("g", g);
    }
    let p = ScrollParams::new(inv.n, inv.ambient)?;
    out.row("k", p.k()).row("ell", p.ell());
    out.result("k", p.k()).result("ell", p.ell());
    Ok(p)
}

fn moduli_for(inv: &Invariants) -> Option<Moduli<BigRational>> {
    Some(Moduli::integral(inv.d?, inv.g?))
}

fn class_answer<C: Coefficient>(out: &mut Output, p: &ScrollParams, m: &Moduli<C>) {
    let class = inflectional_class(p, m);
    out.row("class", &class);
    out.result(
        "class",
        answer(json!(class.to_string()), "inflectional-class formula"),
    );
}

fn degree_answer<C: Coefficient>(
    out: &mut Output,
    p: &ScrollParams,
    m: &Moduli<C>,
    numeric: impl Fn(&C) -> Value,
) {
    let deg = inflectional_degree(p, m);
    out.row("degree", &deg);
    out.result(
        "degree",
        answer(numeric(&deg), "inflectional-degree formula"),
    );
}

fn class(inv: &Invariants) -> Result<Output> {
    let mut out = Output::new("class");
    let p = invariant_inputs(&mut out, inv)?;
    match moduli_for(inv) {
        Some(m) => {
            class_answer(&mut out, &p, &m);
            degree_answer(&mut out, &p, &m, rational);
        }
        None => {
            let m = Moduli::formal();
            class_answer(&mut out, &p, &m);
            degree_answer(&mut out, &p, &m, |c| json!(c.to_string()));
        }
    }
    Ok(out)
}

fn degree(inv: &Invariants) -> Result<Output> {
    let mut out = Output::new("degree");
    let p = invariant_inputs(&mut out, inv)?;
    match moduli_for(inv) {
        Some(m) => degree_answer(&mut out, &p, &m, rational),
        None => degree_answer(&mut out, &p, &Moduli::formal(), |c| json!(c.to_string())),
    }
    Ok(out)
}

fn verify(max_n: usize, max_k: u64) -> Result<Output> {
    let mut out = Output::new("verify-theorem3");
    out.input("max_n", max_n).input("max_k", max_k);
    let m = Moduli::formal();
    let mut checks = Vec::new();
    let (mut passed, mut total) = (0, 0);
    for n in 1..=max_n {
        for k in 1..=max_k {
            for j in 1..=n {
                let pipeline = segre_term(n, k, j, &m)?;
                let closed = segre_closed_form(n, k, j, &m)?;
                let ok = pipeline == closed;
                total += 1;
                passed += ok as usize;
                let status = if ok { "PASS" } else { "FAIL" };
                out.text(format!("{status}  n={n} k={k} j={j}  {pipeline}"));
                checks.push(json!({
                    "n": n, "k": k, "j": j,
                    "pass": ok,
                    "pipeline": pipeline.to_string(),
                    "closed_form": closed.to_string(),
                }));
            }
        }
    }
    out.row("passed", format!("{passed}/{total}"));
    out.result(
        "passed",
        answer(json!(passed), "segre-term pipeline vs closed form"),
    );
    out.result("total", total);
    out.result("checks", checks);
    if passed != total {
        out.exit = 2;
    }
    Ok(out)
}

fn classify(n: u64, k: u64, ell: u64) -> Result<Output> {
    let mut out = Output::new("classify");
    out.input("n", n).input("k", k).input("ell", ell);
    match classify_uninflected(n, k, ell)? {
        Classification::NecessarilyInflected => {
            out.row("answer", "every such scroll is inflected");
            out.result(
                "answer",
                answer(json!("necessarily-inflected"), "uninflected classification"),
            );
        }
        Classification::Uninflected(u) => {
            let summands: Vec<String> = u.splitting.iter().map(|a| format!("O({a})")).collect();
            out.row("answer", "uninflected only for the balanced scroll")
                .row("scroll", format!("P({})", summands.join(" + ")))
                .row("genus", u.genus)
                .row("degree", u.degree)
                .row("ambient", format!("P^{}", u.ambient));
            out.result(
                "answer",
                answer(
                    json!({
                        "kind": "uninflected",
                        "genus": u.genus,
                        "degree": u.degree,
                        "splitting": u.splitting,
                        "ambient": u.ambient,
                    }),
                    "uninflected classification",
                ),
            );
        }
    }
    Ok(out)
}

fn parse_scroll(text: &str) -> Result<DecomposableScroll> {
    Ok(text.parse()?)
}

fn read_basis(path: &Path) -> Result<RationalCurve> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(RationalCurve::parse_basis(&text)?)
}

fn sample_spec(out: &mut Output, s: &Sampling) -> SampleSpec {
    out.input("samples", s.samples).input("seed", s.seed);
    SampleSpec {
        samples: s.samples,
        seed: s.seed,
    }
}

fn scan_body(out: &mut Output, r: &ScanReport) {
    let n = r.scroll.n();
    out.row("points", r.evaluations.len())
        .row("inflected", r.inflected_count())
        .row("conclusion", r.conclusion());
    let mut listed = Vec::new();
    let mut certs = Vec::new();
    for e in r.inflected() {
        let stratum = e
            .stratum_dim(n)
            .map_or("special point".to_string(), |d| format!("stratum dim {d}"));
        out.text(format!(
            "  {}  rank {}  corank {}  {stratum}",
            e.point, e.rank, e.corank
        ));
        listed.push(json!({
            "point": point(&e.point),
            "rank": e.rank,
            "corank": e.corank,
            "stratum_dim": e.stratum_dim(n),
        }));
        if let Some(c) = &e.certificate {
            certs.push(json!({
                "point": point(&e.point),
                "rank": c.rank,
                "pivot_rows": c.pivot_rows,
                "pivot_cols": c.pivot_cols,
                "kernel": c.kernel.iter().map(|v| v.iter().map(rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }));
        }
    }
    out.result("points", r.evaluations.len());
    out.result(
        "inflected_count",
        answer(json!(r.inflected_count()), "rank-scan"),
    );
    out.result(
        "dimension_lower_bound",
        answer(json!(r.dimension_lower_bound()), "rank-scan"),
    );
    out.result("inflected", listed);
    out.result("conclusion", r.conclusion());
    out.certificate = Some(json!({ "kind": "rank", "points": certs }));
}

fn scan(scroll: &str, k: Option<u32>, sampling: &Sampling) -> Result<Output> {
    let mut out = Output::new("scan");
    out.input("scroll", scroll);
    let x = parse_scroll(scroll)?;
    let k = k.unwrap_or((x.ambient() / x.n()) as u32);
    out.input("k", k);
    let spec = sample_spec(&mut out, sampling);
    let r = rank_scan(&x, k, spec)?;
    out.row("scroll", &x)
        .row("ambient", format!("P^{}", x.ambient()))
        .row("k", k);
    scan_body(&mut out, &r);
    Ok(out)
}

fn wronskian_body(out: &mut Output, r: &WronskianReport) {
    out.row("basis", &r.curve)
        .row("k", r.k)
        .row("W(u)", &r.wronskian)
        .row("W at infinity", r.wronskian_at_infinity.fmt_in("u~"));
    out.result("wronskian", r.wronskian.to_string());
    out.result(
        "wronskian_at_infinity",
        r.wronskian_at_infinity.fmt_in("u~"),
    );
    match &r.weights {
        None => {
            out.row("weights", "degenerate: basis is linearly dependent");
            out.result("degenerate", true);
        }
        Some(w) => {
            let mut finite = Vec::new();
            for f in &w.finite {
                match f.root() {
                    Some(root) => out.text(format!("  u = {root}  weight {}", f.weight)),
                    None => out.text(format!(
                        "  roots of {}  {} points, weight {} each",
                        f.factor,
                        f.points(),
                        f.weight
                    )),
                };
                finite.push(json!({
                    "factor": f.factor.to_string(),
                    "root": f.root().as_ref().map(rational),
                    "points": f.points(),
                    "weight": f.weight,
                }));
            }
            out.text(format!("  infinity  weight {}", w.at_infinity));
            out.row("total", w.total);
            out.result("degenerate", false);
            out.result("finite", finite);
            out.result("at_infinity", answer(json!(w.at_infinity), "wronskian"));
            out.result("total", answer(json!(w.total), "wronskian"));
        }
    }
}

fn wronskian(degrees: Option<&str>, basis: Option<&Path>, k: Option<u32>) -> Result<Output> {
    let mut out = Output::new("wronskian");
    let curve = match (degrees, basis) {
        (Some(deg), _) => {
            out.input("degrees", deg);
            RationalCurve::from_scroll(&parse_scroll(deg)?)?
        }
        (None, Some(path)) => {
            out.input("basis", path.display().to_string());
            read_basis(path)?
        }
        (None, None) => unreachable!("clap requires one of --degrees and --basis"),
    };
    let k = k.unwrap_or(curve.span() as u32);
    out.input("k", k);
    let r = wronskian_weights(&curve, k)?;
    wronskian_body(&mut out, &r);
    Ok(out)
}

fn validation_body(out: &mut Output, cv: &CrossValidation) {
    out.row("verdict", cv.verdict)
        .row("k", cv.k)
        .row("formula class", &cv.formula_class)
        .row("formula degree", &cv.formula_degree)
        .row("oracle", cv.oracle.oracle_name());
    out.result("verdict", cv.verdict.to_string());
    out.result("k", cv.k);
    out.result(
        "formula_class",
        answer(
            json!(cv.formula_class.to_string()),
            "inflectional-class formula",
        ),
    );
    out.result(
        "formula_degree",
        answer(rational(&cv.formula_degree), "inflectional-degree formula"),
    );
    out.result("oracle", cv.oracle.oracle_name());
    if let Some(c) = &cv.oracle_class {
        out.row("oracle class", c);
        out.result(
            "oracle_class",
            answer(json!(c.to_string()), cv.oracle.oracle_name()),
        );
    }
    if let Some(d) = &cv.oracle_degree {
        out.row("oracle degree", d);
        out.result(
            "oracle_degree",
            answer(rational(d), cv.oracle.oracle_name()),
        );
    }
    out.row("reason", &cv.reason);
    out.result("reason", cv.reason.clone());
    match &cv.oracle {
        WeightedLocusReport::Wronskian(r) => {
            out.text("oracle report:");
            let mut sub = Output::new("wronskian");
            wronskian_body(&mut sub, r);
            out.text(sub.render_text().trim_end().to_string());
            out.result("oracle_report", serde_json::Value::Object(sub.result));
        }
        WeightedLocusReport::Divisor(r) => {
            let n = r.scroll.n();
            let mut charts = Vec::new();
            for c in &r.charts {
                let name = format!(
                    "det ({}, w{})",
                    match c.base {
                        scrollflex_core::BaseChart::Zero => "0",
                        scrollflex_core::BaseChart::Infinity => "inf",
                    },
                    c.fiber_chart + 1
                );
                out.row(&name, c.display(n));
                charts.push(json!({ "chart": name, "determinant": c.display(n) }));
            }
            let mut components = Vec::new();
            if let Some(d) = &r.divisor {
                for comp in &d.components {
                    out.text(format!("  {comp}"));
                    components.push(json!({
                        "component": comp.to_string(),
                        "multiplicity": match comp {
                            DivisorComponent::Horizontal { multiplicity, .. }
                            | DivisorComponent::Fibers { multiplicity, .. }
                            | DivisorComponent::FiberAtInfinity { multiplicity } => *multiplicity,
                        },
                    }));
                }
            }
            out.result("components", components);
            out.certificate = Some(json!({ "kind": "determinant", "charts": charts }));
        }
        WeightedLocusReport::Scan(r) => {
            let mut sub = Output::new("scan");
            scan_body(&mut sub, r);
            out.text(sub.render_text().trim_end().to_string());
            out.result("oracle_report", serde_json::Value::Object(sub.result));
            out.certificate = sub.certificate;
        }
    }
    if cv.verdict == Verdict::Mismatch {
        out.exit = 2;
    }
}

fn validate(
    scroll: Option<&str>,
    basis: Option<&Path>,
    k: Option<u32>,
    sampling: &Sampling,
) -> Result<Output> {
    let mut out = Output::new("cross-validate");
    let cv = match (scroll, basis) {
        (Some(s), _) => {
            out.input("scroll", s);
            if let Some(k) = k {
                out.input("k", k);
            }
            let spec = sample_spec(&mut out, sampling);
            cross_validate(&parse_scroll(s)?, k, spec)?
        }
        (None, Some(path)) => {
            out.input("basis", path.display().to_string());
            if let Some(k) = k {
                out.input("k", k);
            }
            cross_validate_curve(&read_basis(path)?, k)?
        }
        (None, None) => unreachable!("clap requires one of --scroll and --basis"),
    };
    validation_body(&mut out, &cv);
    Ok(out)
}

fn ranks(n: u64, k: u64) -> Result<Output> {
    let mut out = Output::new("ranks");
    out.input("n", n).input("k", k);
    let p = rank_profile(n, k)?;
    let bad = p.inconsistencies();
    let rows = [
        ("P^k(L)", p.rank_jet),
        ("E_k", p.rank_ek),
        ("Q_k^dual", p.rank_qk_dual),
        ("M_k", p.rank_mk),
        ("S^k Omega (x) L", p.rank_sym),
    ];
    for (name, r) in rows {
        out.row(name, r);
    }
    out.row("consistent", bad.is_empty());
    for b in &bad {
        out.text(format!("  {b}"));
    }
    let source = "rank-profile formulas";
    out.result("rank_jet", answer(json!(p.rank_jet), source))
        .result("rank_ek", answer(json!(p.rank_ek), source))
        .result("rank_qk_dual", answer(json!(p.rank_qk_dual), source))
        .result("rank_mk", answer(json!(p.rank_mk), source))
        .result("rank_sym", answer(json!(p.rank_sym), source))
        .result("consistent", bad.is_empty());
    Ok(out)
}
