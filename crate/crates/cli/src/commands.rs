use crate::cache::Cache;
use crate::config::Config;
use crate::UsageError;
use anyhow::Result;
use mahler_core::analytics::cm::cm_constants;
use mahler_core::analytics::double::{double_lvalue, double_lvalue_merom, PanelSpec};
use mahler_core::analytics::lvalues::{f15_mellin, lvalue_single};
use mahler_core::analytics::{fmt_float, LValueResult};
use mahler_core::cterm::{constant_terms, mahler_direct};
use mahler_core::forms::FormRegistry;
use mahler_core::latex::ToLatex;
use mahler_core::operators::ln;
use mahler_core::operators::moments::{run_case, MomentCase};
use mahler_core::operators::parametrization::check_parametrization;
use mahler_core::report::{CheckRow, Report};
use mahler_core::series::{QSeries, QSeriesJson};
use mahler_core::verify::{criterion, VerifyConfig, CRITERIA};
use rug::Rational;
use serde_json::{json, Value};

/// What a command produced: a JSON payload, a human-readable rendering and,
/// for checking commands, the report that decides the exit status.
pub struct Output {
    pub result: Value,
    pub text: String,
    pub report: Option<Report>,
}

impl Output {
    fn plain(result: Value, text: String) -> Self {
        Output {
            result,
            text,
            report: None,
        }
    }

    fn checks(report: Report) -> Self {
        Output {
            result: json!({ "all_pass": report.all_pass() }),
            text: report.to_text(),
            report: Some(report),
        }
    }
}

fn registry() -> &'static FormRegistry {
    FormRegistry::global()
}

fn known_form(id: &str) -> Result<()> {
    if registry().contains(id) {
        Ok(())
    } else {
        Err(UsageError(format!(
            "unknown form id '{id}'; known ids: {}",
            registry().ids().join(", ")
        ))
        .into())
    }
}

pub fn expand(form: &str, order: usize, cache: &Cache) -> Result<Output> {
    known_form(form)?;
    let recipe = serde_json::to_string(registry().recipe(form)?)?;
    let key = Cache::key(&["expand", &recipe, &order.to_string()]);
    let series = match cache
        .get::<QSeriesJson>("expansions", &key)
        .and_then(|j| QSeries::try_from(&j).ok())
    {
        Some(s) => s,
        None => {
            let s = registry()
                .expansion(form, order)?
                .truncate_abs(order as i64)?;
            cache.put("expansions", &key, &QSeriesJson::from(&s));
            s
        }
    };
    let text = format!("{}\n", series.to_poly_string());
    Ok(Output::plain(
        json!({ "form": form, "order": order, "series": QSeriesJson::from(&series) }),
        text,
    ))
}

pub fn cterms(n: usize, m: usize) -> Result<Output> {
    if !(1..=4).contains(&n) {
        return Err(UsageError(format!("-n {n} outside 1..=4")).into());
    }
    let a = constant_terms(n, m)?;
    let strs: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    Ok(Output::plain(
        json!({ "n": n, "max_power": m, "constant_terms": strs }),
        format!("{}\n", strs.join(" ")),
    ))
}

/// L_n applied to the series of constant terms must vanish to the order the
/// operator's degree in t allows.
pub fn check_ode(n: usize, m: usize) -> Result<Output> {
    if !(2..=4).contains(&n) {
        return Err(UsageError(format!("-n {n} outside 2..=4")).into());
    }
    let op = ln(n)?;
    let a = constant_terms(n, m)?;
    let series = QSeries::from_coeffs(0, a.iter().map(|x| Rational::from(x.clone())).collect());
    let r = op.apply(&series)?;
    let top = m as i64 - op.t_range().map(|x| x.1).unwrap_or(0);
    let mut bad = None;
    for k in 0..=top {
        if r.coeff(k)? != 0 {
            bad = Some(k);
            break;
        }
    }
    let mut report = Report::new();
    report.extend([CheckRow::exact(
        format!("L{n} = {op} annihilates the constant terms"),
        bad.map_or(format!("zero through t^{top}"), |k| {
            format!("nonzero at t^{k}")
        }),
        format!("zero through t^{top}"),
        bad.is_none(),
    )]);
    Ok(Output::checks(report))
}

pub fn check_parametrization_cmd(
    n: usize,
    order: usize,
    trials: usize,
    seed: u64,
) -> Result<Output> {
    if !(2..=3).contains(&n) {
        return Err(UsageError(format!("-n {n}; parametrizations exist for n = 2, 3")).into());
    }
    let r = check_parametrization(registry(), n, order, trials, seed)?;
    let mut report = Report::new();
    report.extend([CheckRow::exact(
        format!("(t{n}, f{n}) parametrizes L{n} through q^{order} ({trials} random test series)"),
        r.first_mismatch
            .as_ref()
            .map_or("equal".to_string(), |m| format!("{m:?}")),
        "equal",
        r.equal,
    )]);
    Ok(Output::checks(report))
}

pub fn moment_rhs(case: &str) -> Result<Output> {
    let case: MomentCase = case.parse().map_err(|e| UsageError(format!("{e}")))?;
    let r = run_case(case)?;
    let latex = json!({
        "h_alpha": r.rhs.h_alpha.to_latex(),
        "h_beta": r.rhs.h_beta.to_latex(),
        "h": r.rhs.h.to_latex(),
        "ln_rhs": r.ln_rhs.as_ref().map(|x| x.to_latex()),
    });
    let mut text = format!(
        "operator: {}\ndual: t^{} [{}]\nH_alpha = {}\nH_beta = {}\nh = {}\n",
        r.operator, r.dual_prefactor, r.dual_operator, r.rhs.h_alpha, r.rhs.h_beta, r.rhs.h
    );
    if let Some(l) = &r.ln_rhs {
        text.push_str(&format!("L_n b = {l}\nlatex: {}\n", l.to_latex()));
    }
    let mut result = serde_json::to_value(&r)?;
    result["latex"] = latex;
    Ok(Output::plain(result, text))
}

fn lvalue_text(label: &str, r: &LValueResult) -> String {
    format!(
        "{label} = {} +- {} ({:?})\n",
        fmt_float(&r.value),
        r.error_bound.to_string_radix(10, Some(3)),
        r.method
    )
}

pub fn lvalue(form: &str, s: i64, mellin: bool, cfg: &Config) -> Result<Output> {
    known_form(form)?;
    let label = format!("L({form}, {s})");
    if mellin {
        if form != "f15" || s < 3 {
            return Err(UsageError("--mellin applies to f15 at s >= 3".into()).into());
        }
        let (r, fit) = f15_mellin(registry(), s as u32, cfg.precision_bits, &cfg.quadrature)?;
        let text = lvalue_text(&label, &r);
        return Ok(Output::plain(
            json!({ "form": form, "s": s, "lvalue": r, "fricke_fit": fit }),
            text,
        ));
    }
    let r = lvalue_single(registry(), form, s, cfg.precision_bits)?;
    let text = lvalue_text(&label, &r);
    Ok(Output::plain(
        json!({ "form": form, "s": s, "lvalue": r }),
        text,
    ))
}

pub fn double_lvalue_cmd(
    j: Option<u32>,
    pair: Option<(String, String, u32, i64)>,
    cfg: &Config,
) -> Result<Output> {
    let (label, r) = match (j, pair) {
        (Some(j), None) => {
            let r = double_lvalue_merom(registry(), j, cfg.precision_bits, &cfg.quadrature)?;
            (format!("L(g{j}, g1, 3, 1)"), r)
        }
        (None, Some((inner, outer, p, s2))) => {
            known_form(&inner)?;
            known_form(&outer)?;
            let (r, _) = double_lvalue(
                registry(),
                &inner,
                &outer,
                p,
                s2,
                cfg.precision_bits,
                &cfg.quadrature,
                &PanelSpec::default(),
            )?;
            (format!("L({inner}, {outer}, {p}, {s2})"), r)
        }
        _ => {
            return Err(
                UsageError("give either --j or all of --inner, --outer, --p, --s2".into()).into(),
            )
        }
    };
    let text = lvalue_text(&label, &r);
    Ok(Output::plain(
        json!({ "value_of": label, "lvalue": r }),
        text,
    ))
}

pub fn cm_constants_cmd(cfg: &Config) -> Result<Output> {
    let c = cm_constants(cfg.precision_bits, &cfg.quadrature)?;
    let result = serde_json::to_value(&c)?;
    let mut text = String::new();
    if let Value::Object(map) = &result {
        for (k, v) in map {
            let v = match v {
                Value::String(s) => s.clone(),
                Value::Object(o) => format!(
                    "{} +- {}",
                    o.get("value").and_then(Value::as_str).unwrap_or(""),
                    o.get("error_bound").and_then(Value::as_str).unwrap_or("")
                ),
                other => other.to_string(),
            };
            text.push_str(&format!("{k} = {v}\n"));
        }
    }
    Ok(Output::plain(result, text))
}

pub fn mahler_direct_cmd(n: usize, samples: u64, seed: u64) -> Result<Output> {
    let e = mahler_direct(n, samples, seed)?;
    let text = format!(
        "m(1 + x1 + ... + x{n}) = {:.12} +- {:.3e} ({} samples, seed {})\n",
        e.estimate, e.std_error, e.samples, e.seed
    );
    Ok(Output::plain(serde_json::to_value(&e)?, text))
}

pub fn verify(
    criteria: &[usize],
    mahler_samples: u64,
    cfg: &Config,
    cache: &Cache,
) -> Result<Output> {
    for &k in criteria {
        if !(1..=CRITERIA.len()).contains(&k) {
            return Err(UsageError(format!("criterion {k} outside 1..={}", CRITERIA.len())).into());
        }
    }
    let vcfg = VerifyConfig {
        precision_bits: cfg.precision_bits,
        series_order: cfg.series_order,
        quadrature: cfg.quadrature.clone(),
        seed: cfg.seed,
        mahler_samples,
    };
    let vkey = serde_json::to_string(&vcfg)?;
    let mut report = Report::new();
    for &k in criteria {
        let key = Cache::key(&["verify", &k.to_string(), &vkey]);
        let rows = match cache.get::<Vec<CheckRow>>("verify", &key) {
            Some(rows) => rows,
            None => {
                let rows = criterion(k, &vcfg);
                cache.put("verify", &key, &rows);
                rows
            }
        };
        report.extend(rows);
    }
    Ok(Output::checks(report))
}
