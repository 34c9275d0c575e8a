use std::path::{Path, PathBuf};

use rug::Complex;

use rowpade::numerics::{Mode, Scalar};
use rowpade::pade::linearization_order;
use rowpade::rows::{
    build_row, denominator_rates, estimate_rstar, fit_rate_parity, indicator_report, sup_errors, telescope_terms,
    RowSequence,
};
use rowpade::series::catalog_names;
use rowpade::verify::{run_suite, Suite};

use crate::args::{ApproximateArgs, ListArgs, RowArgs, VerifyArgs};
use crate::config::{target_roots, RunConfig};
use crate::error::{CliError, CliResult};
use crate::report::{self, CompactRecord, Failure, RadiusRecord, Report, RowSummary};

/// Extra coefficients inspected past `n` when reporting remainder orders.
const REMAINDER_LOOKAHEAD: usize = 20;

/// Process exit status of a successful command: 0, or 1 for a failed
/// verification.
pub type Status = u8;

fn emit(report: &Report, out: Option<&Path>) -> CliResult<()> {
    report::write_json(report, out)?;
    if let Some(path) = out {
        let sidecar: PathBuf = path.with_extension("csv");
        report::write_csv(report, std::fs::File::create(sidecar)?)?;
    }
    Ok(())
}

pub fn approximate(args: &ApproximateArgs) -> CliResult<Status> {
    let cfg = RunConfig::for_approximate(&args.source, args.n)?;
    let report = match cfg.mode {
        Mode::Exact => approximate_in::<rowpade::numerics::Gauss>(&cfg)?,
        Mode::Float => approximate_in::<Complex>(&cfg)?,
    };
    emit(&report, args.source.out.as_deref())?;
    Ok(0)
}

fn approximate_in<S: Scalar>(cfg: &RunConfig) -> CliResult<Report> {
    let ctx = cfg.context();
    let source = cfg.source()?;
    let components = source.components();
    let row = build_row::<S>(source, cfg.n_min, cfg.n_max, &ctx)?;
    let mem = row.member(cfg.n_min)?;
    let mut rec = report::member(mem);
    let up_to = cfg.n_min + REMAINDER_LOOKAHEAD;
    let numerators: Vec<_> = match &mem.hermite {
        Some(h) => h.ps.clone(),
        None => vec![mem.views[0].p.clone()],
    };
    rec.remainder_orders = components
        .iter()
        .zip(&numerators)
        .map(|(f, p)| report::order(linearization_order(mem.q(), p, f, up_to, &ctx)))
        .collect();
    let mut out = Report::new("approximate").with_config(cfg);
    out.approximant = Some(rec);
    Ok(out)
}

pub fn row(args: &RowArgs) -> CliResult<Status> {
    let cfg = RunConfig::for_row(args)?;
    let report = match cfg.mode {
        Mode::Exact => row_in::<rowpade::numerics::Gauss>(&cfg)?,
        Mode::Float => row_in::<Complex>(&cfg)?,
    };
    for f in &report.failures {
        eprintln!("warning: {}: {}", f.item, f.message);
    }
    emit(&report, args.source.out.as_deref())?;
    Ok(0)
}

fn row_in<S: Scalar>(cfg: &RunConfig) -> CliResult<Report> {
    let ctx = cfg.context();
    let row: RowSequence<S> = build_row(cfg.source()?, cfg.n_min, cfg.n_max, &ctx)?;
    let mut out = Report::new("row").with_config(cfg);
    out.members = row.members.iter().map(report::member).collect();
    let mut summary = RowSummary::default();
    let mut fail =
        |item: String, e: &dyn std::fmt::Display| out.failures.push(Failure { item, message: e.to_string() });

    for k in 0..row.component_count() {
        let known = row.source.components()[k].analytics().radius(row.m());
        let mut record = RadiusRecord { component: k + 1, known_radius: known, estimate: None };
        if row.members.len() > 1 {
            match telescope_terms(&row, k) {
                Ok(terms) => {
                    for t in &terms {
                        out.members[t.n - cfg.n_min].telescope.push(report::telescope(k + 1, t));
                    }
                    match estimate_rstar(&terms) {
                        Ok(est) => record.estimate = Some(est),
                        Err(e) => fail(format!("radius[{}]", k + 1), &e),
                    }
                }
                Err(e) => fail(format!("telescope[{}]", k + 1), &e),
            }
        }
        summary.radius.push(record);
    }

    for &a in &cfg.indicator_points {
        summary.indicators.push(indicator_report(&row, a, cfg.decision_tol));
    }

    for compact in &cfg.compacts {
        let surviving = compact.surviving(&row).len();
        for k in 0..row.component_count() {
            match sup_errors(&row, k, compact) {
                Ok(errors) => {
                    let fit = match fit_rate_parity(&errors, None) {
                        Ok(f) => Some(f),
                        Err(e) => {
                            fail(format!("rate[{};{compact}]", k + 1), &e);
                            None
                        }
                    };
                    summary.compacts.push(CompactRecord {
                        component: k + 1,
                        compact: compact.to_string(),
                        epsilon: compact.epsilon,
                        surviving_points: surviving,
                        errors,
                        fit,
                    });
                }
                Err(e) => fail(format!("sup_error[{};{compact}]", k + 1), &e),
            }
        }
    }

    if let Some(t) = &cfg.target_denominator {
        match denominator_rates(&row, &target_roots(t, cfg.precision_bits)?) {
            Ok(d) => summary.denominator_rates = Some(d),
            Err(e) => fail("denominator_rates".into(), &e),
        }
    }
    out.summary = Some(summary);
    Ok(out)
}

pub fn verify(args: &VerifyArgs) -> CliResult<Status> {
    let suite: Suite = args.suite.parse().map_err(CliError::Usage)?;
    let checks = run_suite(suite);
    for c in &checks {
        eprintln!("{c}");
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    let mut report = Report::new("verify");
    report.checks = checks;
    report::write_json(&report, args.out.as_deref())?;
    Ok(u8::from(failed > 0))
}

pub fn list_examples(args: &ListArgs) -> CliResult<Status> {
    let entries = catalog_names();
    if args.json {
        let items: Vec<serde_json::Value> = entries
            .iter()
            .map(|e| serde_json::json!({"name": e.name, "description": e.description, "params": e.params}))
            .collect();
        println!("{}", serde_json::to_string_pretty(&items).expect("plain json"));
    } else {
        for e in entries {
            let params =
                if e.params.is_empty() { String::new() } else { format!(" [params: {}]", e.params.join(", ")) };
            println!("catalog:{:<10} {}{params}", e.name, e.description);
        }
    }
    Ok(0)
}
