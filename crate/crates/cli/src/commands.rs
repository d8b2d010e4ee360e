use std::fmt;

use catbreed::{
    best_cat_fidelity, breed_with, breeding_fidelity, loss_fidelity_exact, loss_fidelity_paper,
    max_alpha_for_fidelity, naive_output_magnitude, threshold_alpha_with, BreedConfig, CatSpec,
    DyadMixture, Parity,
};
use catbreed_oracle::{breed_pipeline, cat_to_fock, coherent_dyads_to_fock, cutoff_for_amplitude, loss_pipeline};
use rayon::prelude::*;

use crate::format::{g9, Table};
use crate::svg::{self, Series};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Degenerate(String),
    Io(std::io::Error),
    SelftestFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Degenerate(_) => 3,
            CliError::Io(_) => 1,
            CliError::SelftestFailed(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "invalid arguments: {m}"),
            CliError::Degenerate(m) => write!(f, "degenerate input: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::SelftestFailed(n) => write!(f, "self-test failed: {n} check(s) out of tolerance"),
        }
    }
}

impl From<catbreed::Error> for CliError {
    fn from(e: catbreed::Error) -> Self {
        match e {
            catbreed::Error::Domain(m) => CliError::Usage(m),
            catbreed::Error::Degenerate(m) | catbreed::Error::NotFound(m) => CliError::Degenerate(m),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Evenly spaced grid including both endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Range {
    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let h = (self.max - self.min) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.max } else { self.min + h * i as f64 })
            .collect()
    }

    /// Checks `lo <(=) min <= max <= hi`.
    pub fn validate(&self, name: &str, lo: f64, lo_open: bool, hi: f64) -> CliResult<()> {
        let lower_ok = if lo_open { self.min > lo } else { self.min >= lo };
        if !(self.min.is_finite() && self.max.is_finite()) || !lower_ok || self.max > hi || self.min > self.max {
            let open = if lo_open { '(' } else { '[' };
            return Err(CliError::Usage(format!(
                "{name} range [{}, {}] must be ordered and lie in {open}{lo}, {hi}]",
                self.min, self.max
            )));
        }
        if self.steps == 0 {
            return Err(CliError::Usage(format!("{name} steps must be at least 1")));
        }
        if self.steps == 1 && self.min != self.max {
            return Err(CliError::Usage(format!("{name} steps must be at least 2 for a non-empty range")));
        }
        Ok(())
    }
}

pub fn validate_eta(eta: f64, lo: f64, hi: f64) -> CliResult<()> {
    if !(eta >= lo && eta <= hi) {
        return Err(CliError::Usage(format!("eta = {eta} must lie in [{lo}, {hi}]")));
    }
    Ok(())
}

pub struct Output {
    pub csv: String,
    pub svg: Option<String>,
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

fn config(unmatched: bool) -> BreedConfig {
    BreedConfig {
        matched: !unmatched,
        ..BreedConfig::default()
    }
}

fn best_for(alpha: f64, eta: f64, parity: Parity, unmatched: bool) -> CliResult<[f64; 4]> {
    let bred = breed_with(alpha, eta, config(unmatched))?;
    let best = best_cat_fidelity(&bred.effective_state, parity)?;
    Ok([best.fidelity, best.magnitude, bred.success_probability, naive_output_magnitude(alpha, eta)])
}

pub fn breed_sweep(
    alpha: Range,
    eta: Range,
    parity: Parity,
    unmatched: bool,
    echo: &str,
    want_svg: bool,
) -> CliResult<Output> {
    alpha.validate("alpha", 0.0, true, 10.0)?;
    eta.validate("eta", 0.5, false, 1.0)?;
    let (alphas, etas) = (alpha.points(), eta.points());
    let grid: Vec<(f64, f64)> = alphas
        .iter()
        .flat_map(|&a| etas.iter().map(move |&e| (a, e)))
        .collect();
    let values = grid
        .par_iter()
        .map(|&(a, e)| best_for(a, e, parity, unmatched))
        .collect::<CliResult<Vec<_>>>()?;

    let mut table = Table::new(&[
        "alpha",
        "eta",
        "fidelity",
        "best_magnitude",
        "success_probability",
        "naive_magnitude",
    ]);
    table.comment(echo);
    table.comment(format!("target parity: {}", parity_name(parity)));
    table.comment(format!("amplitude matching: {}", if unmatched { "off" } else { "on" }));
    for (&(a, e), v) in grid.iter().zip(&values) {
        table.row(vec![a, e, v[0], v[1], v[2], v[3]]);
    }
    let svg = want_svg.then(|| {
        let cells: Vec<Vec<f64>> = values.chunks(etas.len()).map(|c| c.iter().map(|v| v[0]).collect()).collect();
        svg::heatmap("Fidelity of the bred state", "alpha", "eta", &alphas, &etas, &cells)
    });
    Ok(Output { csv: table.render(), svg })
}

pub fn cross_section(
    alpha: Range,
    eta: f64,
    parity: Parity,
    unmatched: bool,
    target_fidelity: f64,
    echo: &str,
    want_svg: bool,
) -> CliResult<Output> {
    alpha.validate("alpha", 0.0, true, 10.0)?;
    validate_eta(eta, 0.5, 1.0)?;
    check_target(target_fidelity)?;
    let alphas = alpha.points();
    let values = alphas
        .par_iter()
        .map(|&a| best_for(a, eta, parity, unmatched))
        .collect::<CliResult<Vec<_>>>()?;

    let mut table = Table::new(&["alpha", "fidelity"]);
    table.comment(echo);
    table.comment(format!("eta = {}", g9(eta)));
    table.comment(format!("target parity: {}", parity_name(parity)));
    table.comment(format!("amplitude matching: {}", if unmatched { "off" } else { "on" }));
    for (&a, v) in alphas.iter().zip(&values) {
        table.row(vec![a, v[0]]);
    }
    // The threshold search always targets odd cats, the parity breeding
    // produces.
    let footer = if parity == Parity::Odd {
        match threshold_alpha_with(eta, target_fidelity, config(unmatched)) {
            Ok(t) => format!("threshold_alpha(eta={}, F={}) = {}", g9(eta), g9(target_fidelity), g9(t)),
            Err(catbreed::Error::NotFound(m)) => format!("threshold_alpha: not found ({m})"),
            Err(e) => return Err(e.into()),
        }
    } else {
        "threshold_alpha: only defined for odd targets".to_string()
    };
    table.footer(footer);
    let svg = want_svg.then(|| {
        let points = alphas.iter().zip(&values).map(|(&a, v)| (a, v[0])).collect();
        svg::line_plot(
            &format!("Fidelity at eta = {}", g9(eta)),
            "alpha",
            "fidelity",
            &[Series { name: "best-cat fidelity", points }],
        )
    });
    Ok(Output { csv: table.render(), svg })
}

fn check_target(f: f64) -> CliResult<()> {
    if !(f > 0.5 && f < 1.0) {
        return Err(CliError::Usage(format!("target fidelity {f} must lie in (0.5, 1)")));
    }
    Ok(())
}

fn loss_row(alpha: f64, eta: f64) -> CliResult<[f64; 3]> {
    Ok([
        loss_fidelity_paper(alpha, eta)?,
        loss_fidelity_exact(CatSpec::even(alpha)?, eta)?,
        loss_fidelity_exact(CatSpec::odd(alpha)?, eta)?,
    ])
}

const LOSS_HEADER: [&str; 5] = ["alpha", "eta", "F_paper", "F_exact_even", "F_exact_odd"];

fn exact_column(parity: Parity) -> usize {
    match parity {
        Parity::Even => 1,
        Parity::Odd => 2,
    }
}

pub fn loss_sweep(alpha: Range, eta: Range, parity: Parity, echo: &str, want_svg: bool) -> CliResult<Output> {
    alpha.validate("alpha", 0.0, true, 10.0)?;
    eta.validate("eta", 0.0, false, 1.0)?;
    let (alphas, etas) = (alpha.points(), eta.points());
    let grid: Vec<(f64, f64)> = alphas
        .iter()
        .flat_map(|&a| etas.iter().map(move |&e| (a, e)))
        .collect();
    let values = grid
        .par_iter()
        .map(|&(a, e)| loss_row(a, e))
        .collect::<CliResult<Vec<_>>>()?;

    let mut table = Table::new(&LOSS_HEADER);
    table.comment(echo);
    for (&(a, e), v) in grid.iter().zip(&values) {
        table.row(vec![a, e, v[0], v[1], v[2]]);
    }
    let svg = want_svg.then(|| {
        let k = exact_column(parity);
        let cells: Vec<Vec<f64>> = values.chunks(etas.len()).map(|c| c.iter().map(|v| v[k]).collect()).collect();
        svg::heatmap(
            &format!("Fidelity of the {} cat after loss", parity_name(parity)),
            "alpha",
            "loss rate",
            &alphas,
            &etas,
            &cells,
        )
    });
    Ok(Output { csv: table.render(), svg })
}

pub fn loss_cross_section(
    alpha: Range,
    eta: f64,
    parity: Parity,
    target_fidelity: f64,
    echo: &str,
    want_svg: bool,
) -> CliResult<Output> {
    alpha.validate("alpha", 0.0, true, 10.0)?;
    validate_eta(eta, 0.0, 1.0)?;
    check_target(target_fidelity)?;
    let alphas = alpha.points();
    let values = alphas
        .par_iter()
        .map(|&a| loss_row(a, eta))
        .collect::<CliResult<Vec<_>>>()?;

    let mut table = Table::new(&LOSS_HEADER);
    table.comment(echo);
    for (&a, v) in alphas.iter().zip(&values) {
        table.row(vec![a, eta, v[0], v[1], v[2]]);
    }
    let footer = if eta > 0.0 {
        let m = max_alpha_for_fidelity(eta, target_fidelity)?;
        format!("max_alpha_for_fidelity(eta={}, F={}) = {}", g9(eta), g9(target_fidelity), g9(m))
    } else {
        "max_alpha_for_fidelity: unbounded without loss".to_string()
    };
    table.footer(footer);
    let svg = want_svg.then(|| {
        let k = exact_column(parity);
        let series = [
            Series {
                name: "closed form",
                points: alphas.iter().zip(&values).map(|(&a, v)| (a, v[0])).collect(),
            },
            Series {
                name: if parity == Parity::Odd { "exact, odd" } else { "exact, even" },
                points: alphas.iter().zip(&values).map(|(&a, v)| (a, v[k])).collect(),
            },
        ];
        svg::line_plot(&format!("Fidelity at loss rate {}", g9(eta)), "alpha", "fidelity", &series)
    });
    Ok(Output { csv: table.render(), svg })
}

const SELFTEST_TRACE_DISTANCE: f64 = 1e-7;
const SELFTEST_FIDELITY: f64 = 1e-8;

fn single_mode_fock(rho: &DyadMixture, cutoff: usize) -> CliResult<catbreed_oracle::FockOperator> {
    let dyads: Vec<_> = rho
        .terms()
        .iter()
        .map(|d| (d.weight, d.ket.get(catbreed::ModeIndex::A_PSI), d.bra.get(catbreed::ModeIndex::A_PSI)))
        .collect();
    coherent_dyads_to_fock(&dyads, cutoff).map_err(|e| CliError::Degenerate(e.to_string()))
}

/// Compares the coherent-state pipeline with the number-basis oracle on a
/// small grid. Returns the report and the number of failed checks.
pub fn selftest() -> CliResult<(String, usize)> {
    let oracle_err = |e: catbreed_oracle::OracleError| CliError::Degenerate(e.to_string());
    let mut report = String::new();
    let mut failures = 0;
    let mut record = |label: String, td: f64, df: f64| {
        let ok = td < SELFTEST_TRACE_DISTANCE && df < SELFTEST_FIDELITY;
        if !ok {
            failures += 1;
        }
        report.push_str(&format!(
            "{} {label}: trace distance {}, fidelity gap {}\n",
            if ok { "ok  " } else { "FAIL" },
            g9(td),
            g9(df)
        ));
    };
    for alpha in [0.5, 1.0, 1.5] {
        for eta in [0.9, 0.99, 1.0] {
            let exact = breed_with(alpha, eta, BreedConfig::default())?;
            let oracle = breed_pipeline(alpha, alpha / eta.sqrt(), eta).map_err(oracle_err)?;
            let converted = single_mode_fock(&exact.effective_state, oracle.cutoff_psi)?;
            let td = converted.trace_distance(&oracle.effective_state).map_err(oracle_err)?;
            let best = breeding_fidelity(alpha, eta, BreedConfig::default())?;
            let target = cat_to_fock(best.magnitude, -1.0, oracle.cutoff_psi).map_err(oracle_err)?;
            let g = oracle.effective_state.fidelity(&target).map_err(oracle_err)?;
            record(format!("breed alpha={} eta={}", g9(alpha), g9(eta)), td, (best.fidelity - g).abs());
        }
    }
    for alpha in [0.5, 1.0, 2.0] {
        for eta in [0.05, 0.2] {
            for parity in [Parity::Even, Parity::Odd] {
                let cat = CatSpec::new(alpha, parity)?;
                let exact = catbreed::apply_loss(cat, eta)?;
                let cutoff = cutoff_for_amplitude(alpha);
                let oracle = loss_pipeline(alpha, parity.sign(), eta).map_err(oracle_err)?;
                let converted = single_mode_fock(&exact.state, cutoff)?;
                let td = converted.trace_distance(&oracle).map_err(oracle_err)?;
                let f = loss_fidelity_exact(cat, eta)?;
                let target = cat_to_fock(exact.surviving_magnitude, parity.sign(), cutoff).map_err(oracle_err)?;
                let g = oracle.fidelity(&target).map_err(oracle_err)?;
                record(
                    format!("loss {} alpha={} eta={}", parity_name(parity), g9(alpha), g9(eta)),
                    td,
                    (f - g).abs(),
                );
            }
        }
    }
    Ok((report, failures))
}
