use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use fracdisc::optimize::{grid_search_alpha, NOMINAL_ALPHA};
use fracdisc::response::{filter_response, ideal_response, make_grid, nyquist, OMEGA_FLOOR};
use fracdisc::{
    analyze, evaluate, evaluate_alpha, optimize_alpha, realize, Family, GAConfig, IIRFilter, ObjectiveConfig,
    RealizationBase,
};

use crate::args::{BodeArgs, CaseAlpha, CompareArgs, ElementArgs, Format, GaArgs, OptimizeArgs, SynthArgs, DEFAULT_TS};
use crate::document::{number, FilterDocument, OracleCheck, Provenance};
use crate::error::CliError;

pub const ORACLE_STEP: f64 = 1e-3;
pub const ORACLE_TOL: f64 = 5e-3;

pub const BODE_HEADER: &str =
    "omega_rad_s,mag_db_ideal,mag_db_filter,phase_deg_ideal,phase_deg_filter,mag_err_db,phase_err_deg";
pub const COMPARE_HEADER: &str = "family,alpha,order,J,J_mag,J_phase,stability";

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path.display().to_string(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Interpolated families need an alpha, pure ones refuse it.
fn resolve_alpha(family: Family, alpha: Option<f64>) -> Result<f64, CliError> {
    match (family.is_interpolated(), alpha) {
        (true, Some(a)) => Ok(a),
        (true, None) => Err(CliError::usage(format!("--alpha is required for {family}"))),
        (false, None) => Ok(0.0),
        (false, Some(_)) => Err(CliError::usage(format!("{family} takes no alpha"))),
    }
}

fn base(e: &ElementArgs) -> RealizationBase {
    RealizationBase { gamma: e.gamma, kind: e.kind, order: e.order, ts: e.ts }
}

fn ga_config(ga: &GaArgs) -> GAConfig {
    GAConfig { population: ga.pop, generations: ga.gens, ..GAConfig::with_seed(ga.seed) }
}

fn build(family: Family, alpha: f64, base: &RealizationBase) -> Result<IIRFilter, CliError> {
    Ok(realize(&base.spec(family, alpha)?)?)
}

fn document(f: &IIRFilter) -> Result<FilterDocument, CliError> {
    let report = analyze(f)?;
    Ok(FilterDocument::from_filter(f, report.classification.name()))
}

pub fn synth(args: &SynthArgs) -> Result<(), CliError> {
    let alpha = resolve_alpha(args.family, args.alpha)?;
    let doc = document(&build(args.family, alpha, &base(&args.element))?)?;
    let text = match args.format {
        Format::Json => doc.to_json(),
        Format::Csv => doc.to_csv(),
    };
    emit(args.out.as_deref(), &text)
}

pub fn optimize(args: &OptimizeArgs) -> Result<(), CliError> {
    if !args.family.is_interpolated() {
        return Err(CliError::usage(format!("{} has no alpha to optimize", args.family)));
    }
    let base = base(&args.element);
    base.spec(args.family, NOMINAL_ALPHA)?;
    let cfg = base.objective(args.w)?;
    let ga = ga_config(&args.ga);
    let result = optimize_alpha(args.family, &base, &cfg, &ga)?;
    let value = evaluate_alpha(result.alpha_opt, args.family, &base, &cfg)?;
    let oracle = args.oracle.then(|| {
        let (alpha_grid, j_grid) = grid_search_alpha(args.family, &base, &cfg, ORACLE_STEP);
        let delta_alpha = (result.alpha_opt - alpha_grid).abs();
        OracleCheck { step: ORACLE_STEP, alpha_grid, j_grid, delta_alpha, agrees: delta_alpha <= ORACLE_TOL }
    });

    let mut doc = document(&build(args.family, result.alpha_opt, &base)?)?;
    doc.provenance = Some(Provenance {
        w: cfg.w(),
        norm: cfg.norm().name().into(),
        points: cfg.grid().len(),
        band: [cfg.grid().lo(), cfg.grid().hi()],
        alpha_opt: result.alpha_opt,
        j: value.j,
        j_mag: value.j_mag,
        j_phase: value.j_phase,
        excluded: value.excluded,
        alpha_nominal: NOMINAL_ALPHA,
        j_nominal: result.j_nominal.unwrap_or(f64::NAN),
        seed: ga.seed,
        population: ga.population,
        generations: ga.generations,
        evaluations: result.evaluations,
        history: result.history.clone(),
        oracle: oracle.clone(),
    });
    emit(args.out.as_deref(), &doc.to_json())?;
    match oracle {
        Some(o) if !o.agrees => Err(CliError::OracleDisagreement {
            alpha_ga: result.alpha_opt,
            alpha_grid: o.alpha_grid,
            delta: o.delta_alpha,
        }),
        _ => Ok(()),
    }
}

fn bode_filter(args: &BodeArgs) -> Result<IIRFilter, CliError> {
    if let Some(path) = &args.filter {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
        return FilterDocument::from_json(&text)?.to_filter();
    }
    // clap guarantees these whenever --filter is absent
    let family = args.family.expect("family");
    let element = ElementArgs {
        gamma: args.gamma.expect("gamma"),
        kind: args.kind.expect("kind"),
        order: args.order.expect("order"),
        ts: args.ts.unwrap_or(DEFAULT_TS),
    };
    build(family, resolve_alpha(family, args.alpha)?, &base(&element))
}

pub fn bode(args: &BodeArgs) -> Result<(), CliError> {
    let f = bode_filter(args)?;
    let (gamma, kind, ts) = (*f.spec().gamma(), f.spec().kind(), *f.spec().ts());
    let (lo, hi) = args.band.unwrap_or((OMEGA_FLOOR, nyquist(ts)));
    if !(lo > 0.0 && lo < hi && hi <= nyquist(ts)) {
        return Err(CliError::usage(format!("band [{lo}, {hi}] must satisfy 0 < lo < hi <= pi/T = {}", nyquist(ts))));
    }
    let grid = make_grid(lo, hi, args.points).map_err(|e| CliError::usage(e.to_string()))?;
    let ideal = ideal_response(gamma, kind, &grid);
    let actual = filter_response(&f, &grid);

    let mut csv = format!("{BODE_HEADER}\n");
    for (&i, s) in actual.indices.iter().zip(&actual.samples) {
        let r = &ideal[i];
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            number(s.omega),
            number(r.mag_db),
            number(s.mag_db),
            number(r.phase_deg),
            number(s.phase_deg),
            number(r.mag_db - s.mag_db),
            number(r.phase_deg - s.phase_deg)
        );
    }
    emit(args.out.as_deref(), &csv)?;
    eprintln!("excluded {} of {} grid points", actual.excluded, grid.len());
    Ok(())
}

pub fn compare(args: &CompareArgs) -> Result<(), CliError> {
    let base = base(&args.element);
    let cfg: ObjectiveConfig = base.objective(args.w)?;
    for case in &args.cases {
        match (case.family.is_interpolated(), case.alpha) {
            (true, CaseAlpha::None) => {
                return Err(CliError::usage(format!("case {} needs :ALPHA or :opt", case.family)))
            }
            (false, CaseAlpha::Fixed(_) | CaseAlpha::Optimized) => {
                return Err(CliError::usage(format!("case {} takes no alpha", case.family)))
            }
            _ => {}
        }
    }

    let mut csv = format!("{COMPARE_HEADER}\n");
    for case in &args.cases {
        let alpha = match case.alpha {
            CaseAlpha::None => None,
            CaseAlpha::Fixed(a) => Some(a),
            CaseAlpha::Optimized => Some(optimize_alpha(case.family, &base, &cfg, &ga_config(&args.ga))?.alpha_opt),
        };
        let f = build(case.family, alpha.unwrap_or(0.0), &base)?;
        let v = evaluate(&f, &cfg)?;
        let stability = analyze(&f)?.classification;
        let alpha = alpha.map(number).unwrap_or_default();
        let _ = writeln!(
            csv,
            "{},{alpha},{},{},{},{},{}",
            case.family,
            base.order,
            number(v.j),
            number(v.j_mag),
            number(v.j_phase),
            stability.name()
        );
    }
    emit(args.out.as_deref(), &csv)
}
