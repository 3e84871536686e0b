//! Command-line front end. Every experiment is a subcommand; results go to
//! standard output as JSON and, depending on `--formats`, to CSV, JSON and
//! SVG files in the output directory.
//!
//! Exit codes: 0 on success, 1 when a checked inequality or optimality
//! condition fails, 2 on a usage error.

use std::f64::consts::FRAC_PI_2;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::critical::{self, FrameCurve};
use crate::curvegeom::{self, PlanarCurve};
use crate::drop::{self, DropSolution};
use crate::elastica::{self, ode::FrameState};
use crate::harness::{self, Counterexample, Family, SweepRow};
use crate::io::{self, fmt_real, SvgCurve, Table};
use crate::minimize::{self, OptimState};
use crate::quartic;
use crate::{Error, Result};

/// Overrides the default output directory; `--output-dir` overrides both.
pub const OUTPUT_DIR_ENV: &str = "ELASTICA_LAB_OUTPUT_DIR";
pub const DEFAULT_OUTPUT_DIR: &str = "elastica-out";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Residual thresholds for `drop verify`: the second-difference check is
/// discretization-limited, the other three are not.
const DROP_B1_TOL: f64 = 1e-5;
const DROP_B234_TOL: f64 = 1e-8;
/// A surgery must lower `E + A` by more than this.
const SURGERY_GAIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Parser)]
#[command(
    name = "elastica-lab",
    version,
    about = "Elastic energy plus area: drops, critical curves, minimizers and inequality checks"
)]
pub struct RunConfig {
    /// Maximum number of intervals in exported curves.
    #[arg(long, global = true, default_value_t = 4096, value_parser = clap::value_parser!(u32).range(16..))]
    pub grid_n: u32,
    /// Root-finding tolerance for the drop constant.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// Base seed for random shapes.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Directory for artifacts (default: $ELASTICA_LAB_OUTPUT_DIR, then ./elastica-out).
    #[arg(long, global = true)]
    pub output_dir: Option<PathBuf>,
    /// Artifact formats to write.
    #[arg(
        long,
        global = true,
        value_enum,
        value_delimiter = ',',
        default_value = "csv,json,svg"
    )]
    pub formats: Vec<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The optimal drop.
    #[command(subcommand)]
    Drop(DropCommand),
    /// Closed critical curve with n periods, and its cut-and-reflect competitor.
    Critical {
        /// Number of curvature periods (1, 2 or 3)
        #[arg(long)]
        periods: u32,
    },
    /// Check the inequalities on a seeded shape family.
    Verify {
        /// fourier, ellipse or dumbbell
        #[arg(long)]
        family: Family,
        /// Number of shapes to draw
        #[arg(long)]
        samples: usize,
    },
    /// Sweep one of the families that drive E²A to zero.
    Counterexample {
        /// ring, gaussian or dumbbell
        kind: Counterexample,
        /// Comma-separated parameter values (inner radius, Gaussian α or neck length)
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        sweep: Option<Vec<f64>>,
    },
    /// Minimize E + A over closed curves.
    Minimize {
        /// Starting curve
        #[arg(long, value_enum, default_value = "circle")]
        init: Init,
        /// Number of tangent-angle nodes
        #[arg(long, default_value_t = 256)]
        nodes: usize,
        /// Cap on descent iterations
        #[arg(long, default_value_t = 50_000)]
        max_iter: usize,
    },
    /// Integrate k'' = -k³/2 + 1 from the curvature maximum.
    Ode {
        /// First-integral constant
        #[arg(long = "C", allow_hyphen_values = true)]
        c: f64,
        /// Arclength to integrate to
        #[arg(long)]
        s_end: f64,
        /// RK4 step
        #[arg(long, default_value_t = 1e-4)]
        step: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum DropCommand {
    /// Solve for C* and report the drop.
    Solve,
    /// Solve, then check the optimality residuals and the drop bounds.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Init {
    Circle,
    Fourier,
    Ellipse,
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let mut session = Session::new(&config, out, err);
    match session.dispatch(&config.command) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(session.err, "error: {e}");
            match e {
                Error::Domain(_) | Error::Contract(_) | Error::Rejected(_) => EXIT_USAGE,
                _ => EXIT_VIOLATION,
            }
        }
    }
}

/// Resolves the output directory: flag, then environment, then default.
pub fn output_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(v) if !v.is_empty() => PathBuf::from(v),
        _ => PathBuf::from(DEFAULT_OUTPUT_DIR),
    }
}

struct Session<'a> {
    dir: PathBuf,
    formats: Vec<Format>,
    grid_n: usize,
    tol: f64,
    seed: u64,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl<'a> Session<'a> {
    fn new(config: &RunConfig, out: &'a mut dyn Write, err: &'a mut dyn Write) -> Self {
        let mut formats = config.formats.clone();
        formats.sort();
        formats.dedup();
        Self {
            dir: output_dir(config.output_dir.as_deref()),
            formats,
            grid_n: config.grid_n as usize,
            tol: config.tol,
            seed: config.seed,
            out,
            err,
        }
    }

    fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }

    fn file(&mut self, format: Format, name: &str, contents: impl FnOnce() -> Result<String>) -> Result<()> {
        if self.wants(format) {
            let path = io::write_artifact(&self.dir, name, &contents()?)?;
            let _ = writeln!(self.err, "wrote {}", path.display());
        }
        Ok(())
    }

    /// Prints `value` as JSON and writes it to `name` when JSON is selected.
    fn report<T: Serialize + ?Sized>(&mut self, name: &str, value: &T) -> Result<()> {
        let text = io::to_json(value)?;
        self.out.write_all(text.as_bytes())?;
        self.file(Format::Json, name, || Ok(text))
    }

    fn curve_csv(&mut self, name: &str, curve: &PlanarCurve) -> Result<()> {
        let stride = io::stride_for(curve, self.grid_n);
        self.file(Format::Csv, name, || Ok(io::curve_csv(curve, stride)))
    }

    fn svg(&mut self, name: &str, curves: &[SvgCurve<'_>]) -> Result<()> {
        self.file(Format::Svg, name, || Ok(io::svg(curves)))
    }

    fn dispatch(&mut self, command: &Command) -> Result<i32> {
        match command {
            Command::Drop(DropCommand::Solve) => self.drop_solve(),
            Command::Drop(DropCommand::Verify) => self.drop_verify(),
            Command::Critical { periods } => self.critical(*periods),
            Command::Verify { family, samples } => self.verify(*family, *samples),
            Command::Counterexample { kind, sweep } => self.counterexample(*kind, sweep.as_deref()),
            Command::Minimize { init, nodes, max_iter } => self.minimize(*init, *nodes, *max_iter),
            Command::Ode { c, s_end, step } => self.ode(*c, *s_end, *step),
        }
    }

    fn solve_drop(&mut self) -> Result<DropSolution> {
        let t0 = Instant::now();
        let sol = drop::solve_drop(self.tol)?;
        let _ = writeln!(self.err, "drop solved in {:.3} s", t0.elapsed().as_secs_f64());
        Ok(sol)
    }

    fn drop_solve(&mut self) -> Result<i32> {
        let sol = self.solve_drop()?;
        self.report("drop.json", &sol)?;
        self.curve_csv("drop_curve.csv", sol.curve())?;
        self.svg("drop.svg", &[SvgCurve::new("drop", sol.curve())])?;
        Ok(EXIT_OK)
    }

    fn drop_verify(&mut self) -> Result<i32> {
        let sol = self.solve_drop()?;
        let residuals = drop::verify_optimality(&sol);
        let bounds = drop::drop_bounds_report(&sol);
        let crossings = drop::uniqueness_probe()?;
        let residuals_ok = residuals.b1 <= DROP_B1_TOL
            && residuals.b2 <= DROP_B234_TOL
            && residuals.b3 <= DROP_B234_TOL
            && residuals.b4 <= DROP_B234_TOL;
        let passed = residuals_ok && bounds.all_hold() && crossings == 1;
        self.report(
            "drop_verify.json",
            &json!({
                "C_star": sol.c_star,
                "E_plus_A": sol.energy_plus_area,
                "residuals": residuals,
                "residual_tolerances": { "b1": DROP_B1_TOL, "b2_b4": DROP_B234_TOL },
                "bounds": bounds,
                "turning_sign_changes": crossings,
                "passed": passed,
            }),
        )?;
        if !passed {
            let _ = writeln!(self.err, "drop verification failed");
        }
        Ok(if passed { EXIT_OK } else { EXIT_VIOLATION })
    }

    fn critical(&mut self, n: u32) -> Result<i32> {
        let stem = format!("critical_n{n}");
        let crit = match critical::solve_closed_critical(n) {
            Ok(c) => c,
            Err(Error::Infeasible(reason)) => {
                let range = critical::turning_range(100.0, 400)?;
                let _ = writeln!(self.err, "n = {n} is infeasible");
                self.report(
                    &format!("{stem}.json"),
                    &json!({
                        "n_periods": n,
                        "feasible": false,
                        "reason": reason,
                        "target_turning": std::f64::consts::TAU / n as f64,
                        "turning_range": range,
                    }),
                )?;
                return Ok(EXIT_OK);
            }
            Err(e) => return Err(e),
        };
        let surgery = critical::surgery_compare(&crit)?;
        let competitor = surgery.competitor.joined();
        let decreases = surgery.d_energy <= 0.0 && surgery.d_area <= 0.0 && surgery.d_total() < -SURGERY_GAIN;
        self.report(
            &format!("{stem}.json"),
            &json!({
                "n_periods": n,
                "feasible": true,
                "critical": crit,
                "surgery": surgery,
                "d_total": surgery.d_total(),
                "competitor_decreases": decreases,
            }),
        )?;
        self.curve_csv(&format!("{stem}.csv"), &crit.curve)?;
        self.curve_csv(&format!("{stem}_competitor.csv"), &competitor)?;
        self.svg(
            &format!("{stem}.svg"),
            &[
                SvgCurve::new("critical", &crit.curve),
                SvgCurve::new("competitor", &competitor).stroke("#c0392b"),
            ],
        )?;
        if !decreases {
            let _ = writeln!(self.err, "the competitor does not lower E + A");
        }
        Ok(if decreases { EXIT_OK } else { EXIT_VIOLATION })
    }

    fn verify(&mut self, family: Family, samples: usize) -> Result<i32> {
        if samples == 0 {
            return Err(Error::Domain("--samples must be positive".into()));
        }
        let report = harness::verify_family(family, samples, self.seed)?;
        let _ = writeln!(
            self.err,
            "{samples} {family} samples in {:.3} s, {} violations",
            report.runtime,
            report.violations.len()
        );
        self.report(&format!("verify_{family}.json"), &report)?;
        if self.wants(Format::Csv) {
            let mut table = Table::new(&[
                "seed",
                "E",
                "A",
                "Lperim",
                "EEA",
                "gage_ratio",
                "circumradius",
                "length_bound",
                "convex",
            ]);
            for i in 0..samples {
                let r = harness::sample(family, self.seed.wrapping_add(i as u64), i)?;
                let m = r.metrics;
                table.push(vec![
                    r.seed.to_string(),
                    fmt_real(m.energy),
                    fmt_real(m.area),
                    fmt_real(m.perimeter),
                    fmt_real(m.eea),
                    fmt_real(m.gage_ratio),
                    fmt_real(m.circumradius),
                    fmt_real(r.length_bound),
                    r.convex.to_string(),
                ]);
            }
            self.file(Format::Csv, &format!("verify_{family}.csv"), || table.to_csv())?;
        }
        Ok(if report.violations.is_empty() {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        })
    }

    fn counterexample(&mut self, kind: Counterexample, sweep: Option<&[f64]>) -> Result<i32> {
        let params: Vec<f64> = match sweep {
            Some(p) => p.to_vec(),
            None => match kind {
                Counterexample::Ring => vec![1.0, 10.0, 100.0, 1000.0],
                Counterexample::Gaussian => vec![1.0, 0.1, 0.01],
                Counterexample::Dumbbell => vec![5.0, 10.0, 20.0, 40.0],
            },
        };
        let rows = harness::counterexample_sweep(kind, &params)?;
        let name = match kind {
            Counterexample::Ring => "ring",
            Counterexample::Gaussian => "gaussian",
            Counterexample::Dumbbell => "dumbbell",
        };
        self.report(
            &format!("counterexample_{name}.json"),
            &json!({
                "kind": kind,
                "rows": rows,
                "eea_strictly_decreasing": harness::strictly_decreasing(&rows),
                "disc_eea": std::f64::consts::PI.powi(3),
            }),
        )?;
        self.file(Format::Csv, &format!("counterexample_{name}.csv"), || {
            sweep_table(&rows).to_csv()
        })?;
        if kind == Counterexample::Dumbbell && self.wants(Format::Svg) {
            let curves = params
                .iter()
                .map(|&p| curvegeom::dumbbell(p))
                .collect::<Result<Vec<_>>>()?;
            let ids: Vec<String> = params.iter().map(|p| format!("neck_{p}")).collect();
            let items: Vec<SvgCurve<'_>> = ids.iter().zip(&curves).map(|(id, c)| SvgCurve::new(id, c)).collect();
            self.svg(&format!("counterexample_{name}.svg"), &items)?;
        }
        Ok(EXIT_OK)
    }

    fn minimize(&mut self, init: Init, nodes: usize, max_iter: usize) -> Result<i32> {
        let state = match init {
            Init::Circle => OptimState::circle(nodes, 1.0)?,
            Init::Fourier => OptimState::from_curve(&curvegeom::fourier_shape(self.seed, 4, 0.2, nodes)?)?,
            Init::Ellipse => OptimState::from_curve(&curvegeom::ellipse(2.0, 1.0, nodes)?)?,
        };
        let t0 = Instant::now();
        let res = minimize::minimize_energy(&state, max_iter)?;
        let _ = writeln!(
            self.err,
            "{} iterations in {:.3} s, converged: {}",
            res.iterations,
            t0.elapsed().as_secs_f64(),
            res.converged
        );
        let pi3 = std::f64::consts::PI.powi(3);
        self.report(
            "minimize.json",
            &json!({
                "init": format!("{init:?}").to_lowercase(),
                "nodes": nodes,
                "result": res,
                "eea_relative_gap": (res.metrics.eea - pi3) / pi3,
                "optimal_radius": minimize::rescale_to_optimal_area(std::f64::consts::PI),
            }),
        )?;
        if self.wants(Format::Csv) {
            let mut log = Table::new(&["outer", "iter", "objective", "E", "A", "violation", "step"]);
            for r in &res.log {
                log.push(vec![
                    r.outer.to_string(),
                    r.iter.to_string(),
                    fmt_real(r.objective),
                    fmt_real(r.energy),
                    fmt_real(r.area),
                    fmt_real(r.violation),
                    fmt_real(r.step),
                ]);
            }
            self.file(Format::Csv, "minimize_log.csv", || log.to_csv())?;
        }
        let curve = res.curve();
        self.curve_csv("minimize_curve.csv", &curve)?;
        self.svg("minimize.svg", &[SvgCurve::new("minimizer", &curve)])?;
        Ok(if res.converged { EXIT_OK } else { EXIT_VIOLATION })
    }

    fn ode(&mut self, c: f64, s_end: f64, step: f64) -> Result<i32> {
        if !(s_end > 0.0 && s_end.is_finite()) || !(step > 0.0 && step.is_finite()) {
            return Err(Error::Domain("--s-end and --step must be positive".into()));
        }
        let pd = elastica::period_data(c)?;
        let k_max = pd.roots.k_max;
        let trace = elastica::integrate_ode(c, k_max, 0.0, s_end, step);
        let measured = trace.measured_period();
        self.report(
            "ode.json",
            &json!({
                "C": c,
                "k_m": pd.roots.k_min,
                "k_M": k_max,
                "step": trace.step,
                "s_end": s_end,
                "drift": trace.drift,
                "quadrature_period": pd.period,
                "measured_period": measured,
                "period_relative_gap": measured.map(|m| (m - pd.period).abs() / pd.period),
                "extrema": trace.extrema,
                "dk_dC": quartic::root_sensitivities(c).ok(),
            }),
        )?;
        if self.wants(Format::Csv) {
            let mut table = Table::new(&["s", "k", "kp"]);
            let stride = trace.samples.len().div_ceil(self.grid_n + 1).max(1);
            let last = trace.samples.len() - 1;
            for (i, p) in trace.samples.iter().enumerate() {
                if i % stride == 0 || i == last {
                    table.push(vec![fmt_real(p.s), fmt_real(p.k), fmt_real(p.kp)]);
                }
            }
            self.file(Format::Csv, "ode_trace.csv", || table.to_csv())?;
        }
        let start = FrameState {
            k: k_max,
            kp: 0.0,
            theta: FRAC_PI_2,
            x: 0.5 * k_max * k_max,
            y: 0.0,
        };
        let frame = FrameCurve::integrate(c, start, s_end, self.grid_n);
        let curve = frame.to_planar();
        self.curve_csv("ode_curve.csv", &curve)?;
        self.svg("ode.svg", &[SvgCurve::new("elastica", &curve)])?;
        Ok(EXIT_OK)
    }
}

fn sweep_table(rows: &[SweepRow]) -> Table {
    let opt = |v: Option<f64>| v.map(fmt_real).unwrap_or_default();
    let mut t = Table::new(&["param", "E", "A", "EEA", "Lperim", "gage_ratio"]);
    for r in rows {
        t.push(vec![
            fmt_real(r.param),
            fmt_real(r.energy),
            fmt_real(r.area),
            fmt_real(r.eea),
            opt(r.perimeter),
            opt(r.gage_ratio),
        ]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> std::result::Result<RunConfig, clap::Error> {
        RunConfig::try_parse_from(std::iter::once("elastica-lab").chain(args.iter().copied()))
    }

    #[test]
    fn defaults() {
        let c = parse(&["drop", "solve"]).unwrap();
        assert_eq!(c.grid_n, 4096);
        assert_eq!(c.tol, 1e-10);
        assert_eq!(c.seed, 0);
        assert_eq!(c.formats, vec![Format::Csv, Format::Json, Format::Svg]);
        assert!(c.output_dir.is_none());
    }

    #[test]
    fn global_flags_after_subcommand() {
        let c = parse(&[
            "verify",
            "--family",
            "ellipse",
            "--samples",
            "3",
            "--seed",
            "9",
            "--formats",
            "json",
        ])
        .unwrap();
        assert_eq!(c.seed, 9);
        assert_eq!(c.formats, vec![Format::Json]);
        match c.command {
            Command::Verify { family, samples } => {
                assert_eq!(family, Family::Ellipse);
                assert_eq!(samples, 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_constant_and_sweep_lists() {
        let c = parse(&["ode", "--C", "-0.5", "--s-end", "3"]).unwrap();
        assert!(matches!(c.command, Command::Ode { c, .. } if c == -0.5));
        let c = parse(&["counterexample", "gaussian", "--sweep", "1,0.1,0.01"]).unwrap();
        match c.command {
            Command::Counterexample { sweep, .. } => assert_eq!(sweep.unwrap(), vec![1.0, 0.1, 0.01]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn usage_errors() {
        for args in [
            vec!["drop", "solve", "--bogus"],
            vec!["verify", "--family", "square", "--samples", "2"],
            vec!["counterexample", "torus"],
            vec!["minimize", "--init", "triangle"],
            vec![],
        ] {
            assert!(parse(&args).is_err(), "{args:?}");
        }
    }
}
