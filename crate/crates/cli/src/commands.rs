use pairlaw_core::dist_core::RngSeed;
use pairlaw_core::exec::DEFAULT_STREAMS;
use pairlaw_core::family_opt::{family_argmax, figure_family_curves, simplex_search_with};
use pairlaw_core::limit_laws::{
    ell, ell_argmax, ell_curve, ell_shoes, ell_shoes_diag_argmax, ell_shoes_grid, MIN_ARGMAX_TOL,
};
use pairlaw_core::pair_laws::{derive_m1, derive_m2, tvd};
use pairlaw_core::shoes::{shoes_discrepancy_with, sup_one_demo_with, ShoePair};
use pairlaw_core::{Error, PairLaw};

use crate::args::{
    Cli, Command, DeriveArgs, FamilyAction, FamilyArgs, LimitArgs, LimitKind, MethodChoice,
    SearchArgs, ShoesCommand, ShoesDeriveArgs, SupDemoArgs,
};
use crate::input::{parse_counts, read_distribution};
use crate::output::{Cell, OutputEnvelope, Results};
use crate::{CliError, Threaded};

/// Default absolute tolerance for single limit-function values and curves.
pub const DEFAULT_VALUE_TOL: f64 = 1e-12;

pub fn run(cli: &Cli) -> Result<OutputEnvelope, CliError> {
    let exec = cli
        .threads
        .map_or_else(Threaded::from_machine, Threaded::new);
    match &cli.command {
        Command::Derive(a) => derive(a),
        Command::Family(a) => family(a),
        Command::Limit(a) => limit(a),
        Command::Search(a) => search(a, &exec),
        Command::Shoes {
            command: ShoesCommand::Derive(a),
        } => shoes_derive(a, &exec),
        Command::Shoes {
            command: ShoesCommand::SupDemo(a),
        } => sup_demo(a, &exec),
    }
}

fn law_rows(results: &mut Results, label: &str, law: &PairLaw) {
    for (i, &p) in law.probs.iter().enumerate() {
        results.push(vec![label.into(), i.into(), p.into()]);
    }
}

fn quantity(results: &mut Results, label: &str, value: impl Into<Cell>) {
    results.push(vec![label.into(), Cell::Null, value.into()]);
}

fn derive(a: &DeriveArgs) -> Result<OutputEnvelope, CliError> {
    let d = read_distribution(&a.dist)?;
    let (m1, m2) = (derive_m1(&d), derive_m2(&d));
    let mut r = Results::table(&["quantity", "index", "value"]);
    if a.method != MethodChoice::M2 {
        law_rows(&mut r, "M1", &m1);
    }
    if a.method != MethodChoice::M1 {
        law_rows(&mut r, "M2", &m2);
    }
    quantity(&mut r, "D", tvd(&m1, &m2)?);
    let method = match a.method {
        MethodChoice::M1 => "m1",
        MethodChoice::M2 => "m2",
        MethodChoice::Both => "both",
    };
    Ok(OutputEnvelope::new("derive", r)
        .param("dist", a.dist.as_str())
        .param("method", method))
}

fn family(a: &FamilyArgs) -> Result<OutputEnvelope, CliError> {
    let env = match a.action {
        FamilyAction::Max => {
            let opt = family_argmax(a.n)?;
            let mut r = Results::table(&["n", "x", "D"]);
            r.push(vec![a.n.into(), opt.argmax.into(), opt.value.into()]);
            OutputEnvelope::new("family", r).param("action", "max")
        }
        FamilyAction::Curve => {
            let mut r = Results::table(&["n", "u", "D"]);
            for row in figure_family_curves(a.n, a.samples)? {
                if a.all || row.n == a.n {
                    r.push(vec![row.n.into(), row.u.into(), row.d.into()]);
                }
            }
            OutputEnvelope::new("family", r)
                .param("action", "curve")
                .param("samples", a.samples)
                .param("all", a.all)
        }
    };
    Ok(env.param("n", a.n))
}

fn grid(from: f64, to: f64, samples: usize, log: bool) -> Result<Vec<f64>, CliError> {
    if !(from > 0.0 && to > from && to.is_finite()) || samples < 2 {
        return Err(
            Error::InvalidArgument("grid needs 0 < from < to and at least two samples").into(),
        );
    }
    let last = (samples - 1) as f64;
    Ok((0..samples)
        .map(|i| {
            let s = i as f64 / last;
            if i + 1 == samples {
                to
            } else if log {
                from * (to / from).powf(s)
            } else {
                from + (to - from) * s
            }
        })
        .collect())
}

fn limit(a: &LimitArgs) -> Result<OutputEnvelope, CliError> {
    let kind = match a.kind {
        LimitKind::Socks => "socks",
        LimitKind::ShoesDiag => "shoes-diag",
        LimitKind::ShoesGrid => "shoes-grid",
    };
    let base = |r: Results| OutputEnvelope::new("limit", r).param("kind", kind);
    let param_name = if a.kind == LimitKind::Socks { "c" } else { "a" };
    if a.argmax {
        let tol = a.tol.unwrap_or(MIN_ARGMAX_TOL);
        let opt = match a.kind {
            LimitKind::Socks => ell_argmax(tol)?,
            LimitKind::ShoesDiag => ell_shoes_diag_argmax(tol)?,
            LimitKind::ShoesGrid => {
                return Err(
                    Error::InvalidArgument("--argmax applies to socks and shoes-diag").into(),
                )
            }
        };
        let mut r = Results::table(&[param_name, "value"]);
        r.push(vec![opt.argmax.into(), opt.value.into()]);
        return Ok(base(r).param("argmax", true).tolerance("argmax", tol));
    }
    let tol = a.tol.unwrap_or(DEFAULT_VALUE_TOL);
    if let Some(c) = a.c {
        let q = match a.kind {
            LimitKind::Socks => ell(c, tol)?,
            LimitKind::ShoesDiag => ell_shoes(c, c, tol)?,
            LimitKind::ShoesGrid => {
                return Err(Error::InvalidArgument("--c applies to socks and shoes-diag").into())
            }
        };
        let r = Results::Scalar {
            name: "value".into(),
            value: q.value.into(),
        };
        return Ok(base(r)
            .param(param_name, c)
            .tolerance("quadrature", tol)
            .tolerance("abs_error_estimate", q.abs_error_estimate));
    }
    let xs = grid(a.from, a.to, a.samples, a.log)?;
    let r = match a.kind {
        LimitKind::Socks => {
            let mut r = Results::table(&["c", "value"]);
            for s in ell_curve(&xs, tol)? {
                r.push(vec![s.a.into(), s.value.into()]);
            }
            r
        }
        LimitKind::ShoesDiag => {
            let mut r = Results::table(&["a", "value"]);
            for &x in &xs {
                r.push(vec![x.into(), ell_shoes(x, x, tol)?.value.into()]);
            }
            r
        }
        LimitKind::ShoesGrid => {
            let mut r = Results::table(&["a", "b", "value"]);
            for s in ell_shoes_grid(&xs, &xs, tol)? {
                r.push(vec![
                    s.a.into(),
                    s.b.map_or(Cell::Null, Cell::Real),
                    s.value.into(),
                ]);
            }
            r
        }
    };
    Ok(base(r)
        .param("from", a.from)
        .param("to", a.to)
        .param("samples", a.samples)
        .param("log", a.log)
        .tolerance("quadrature", tol))
}

fn search(a: &SearchArgs, exec: &Threaded) -> Result<OutputEnvelope, CliError> {
    let res = simplex_search_with(a.m, a.points, RngSeed(a.seed), DEFAULT_STREAMS, exec)?;
    let mut r = Results::table(&["quantity", "index", "value"]);
    quantity(&mut r, "D", res.value);
    quantity(&mut r, "nearest_family_gap", res.nearest_family_gap);
    for (i, &p) in res.best.probs().iter().enumerate() {
        r.push(vec!["p".into(), i.into(), p.into()]);
    }
    Ok(OutputEnvelope::new("search", r)
        .param("m", a.m)
        .param("points", a.points)
        .param("seed", a.seed)
        .seed(a.seed))
}

fn shoes_derive(a: &ShoesDeriveArgs, exec: &Threaded) -> Result<OutputEnvelope, CliError> {
    let sp = ShoePair::new(read_distribution(&a.left)?, read_distribution(&a.right)?)?;
    let res = shoes_discrepancy_with(
        &sp,
        a.exact,
        a.trials,
        RngSeed(a.seed),
        DEFAULT_STREAMS,
        exec,
    )?;
    let mut r = Results::table(&["quantity", "index", "value"]);
    law_rows(&mut r, "M1", &res.m1);
    law_rows(&mut r, "M2", &res.m2);
    quantity(&mut r, "D", res.value);
    quantity(&mut r, "error_bar", res.error_bar);
    quantity(&mut r, "exact", res.exact);
    let env = OutputEnvelope::new("shoes derive", r)
        .param("left", a.left.as_str())
        .param("right", a.right.as_str())
        .param("exact", a.exact);
    Ok(if res.exact {
        env
    } else {
        env.param("trials", a.trials)
            .param("seed", a.seed)
            .seed(a.seed)
    })
}

fn sup_demo(a: &SupDemoArgs, exec: &Threaded) -> Result<OutputEnvelope, CliError> {
    let ns = parse_counts(&a.n)?;
    let rows = sup_one_demo_with(&ns, a.trials, RngSeed(a.seed), DEFAULT_STREAMS, exec)?;
    let mut r = Results::table(&["n", "D", "error_bar"]);
    for row in rows {
        r.push(vec![row.n.into(), row.d.into(), row.error_bar.into()]);
    }
    Ok(OutputEnvelope::new("shoes sup-demo", r)
        .param("n", a.n.as_str())
        .param("trials", a.trials)
        .param("seed", a.seed)
        .seed(a.seed))
}
