//! The `qrdyn` command-line front end.
//!
//! [`run`] parses flags, validates them, dispatches to `qrdynamics`, and
//! returns the process exit code: 0 on success, 2 for flag or validation
//! errors, 1 for runtime failures such as an unwritable output path. Every
//! invocation writes a one-line provenance header to stderr.

pub mod config;

use std::fmt::Write as _;
use std::fs;
use std::io::Write;

use anyhow::Context;
use clap::Parser;
use qrdynamics::canonical::{canonicalize, conjugacy_residual, GeneralQuadComposition};
use qrdynamics::dynamics::{connectivity_verdict, iterate_orbit, julia_bailout, QAMap};
use qrdynamics::rays::{fixed_ray_candidates, real_segment};
use qrdynamics::render::{encode_pgm, render_tiled, GammaMap, GridSpec, RenderJob, Window};
use qrdynamics::stretch::StretchParams;
use qrdynamics::{Point, QAMap64, StretchParams64};

pub use config::{Cli, CommandKind, JobConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Steps and seeds used for the canonicalization residual.
pub const RESIDUAL_STEPS: usize = 10;
pub const RESIDUAL_SEEDS: [(f64, f64); 3] = [(0.0, 0.0), (0.1, 0.1), (-0.2, 0.05)];

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<qrdynamics::Error> for Failure {
    fn from(e: qrdynamics::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Runs with the process's stdout and stderr.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs with explicit output streams. `argv[0]` is the program name.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let cfg = JobConfig::from_cli(&cli);
    let _ = writeln!(err, "{cfg}");
    match execute(&cfg, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_RUNTIME
        }
    }
}

fn point(p: (f64, f64)) -> Result<Point, Failure> {
    if p.0.is_finite() && p.1.is_finite() {
        Ok(Point::new(p.0, p.1))
    } else {
        Err(usage(format!("non-finite complex value {},{}", p.0, p.1)))
    }
}

fn stretch(cfg: &JobConfig) -> Result<StretchParams64, Failure> {
    Ok(StretchParams::new(cfg.k, cfg.theta)?)
}

fn bailout(cfg: &JobConfig) -> Result<Option<f64>, Failure> {
    match cfg.bailout_override {
        Some(b) if !(b.is_finite() && b > 0.0) => Err(usage(format!("bailout must be positive, got {b}"))),
        other => Ok(other),
    }
}

fn render_setup(cfg: &JobConfig) -> Result<(Window<f64>, GridSpec), Failure> {
    let [x0, x1, y0, y1] = cfg.window;
    let window = Window::new(x0, x1, y0, y1)?;
    let grid = GridSpec::new(cfg.width, cfg.height, cfg.max_iter)?;
    if cfg.workers == 0 {
        return Err(usage("workers must be at least 1"));
    }
    Ok((window, grid))
}

fn emit(cfg: &JobConfig, bytes: &[u8], out: &mut dyn Write) -> Result<(), Failure> {
    match &cfg.out_path {
        Some(path) => {
            fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display())).map_err(Failure::Runtime)
        }
        None => out.write_all(bytes).context("cannot write to stdout").map_err(Failure::Runtime),
    }
}

fn execute(cfg: &JobConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match cfg.command {
        CommandKind::Julia | CommandKind::Mandelbrot | CommandKind::Slice => render_cmd(cfg, out, err),
        CommandKind::Orbit => orbit_cmd(cfg, out, err),
        CommandKind::Canonicalize => {
            let g = GeneralQuadComposition::new(point(cfg.a)?, point(cfg.b)?, point(cfg.c)?, stretch(cfg)?)?;
            let report = canonicalize_report(&g)?;
            out.write_all(report.as_bytes()).context("cannot write to stdout").map_err(Failure::Runtime)
        }
        CommandKind::FixedRay => {
            let report = fixed_ray_report(&stretch(cfg)?)?;
            out.write_all(report.as_bytes()).context("cannot write to stdout").map_err(Failure::Runtime)
        }
    }
}

fn render_cmd(cfg: &JobConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let (window, grid) = render_setup(cfg)?;
    let job = match cfg.command {
        CommandKind::Julia => {
            let map = QAMap::new(stretch(cfg)?, point(cfg.c)?);
            if cfg.trace {
                let report = connectivity_verdict(&map, qrdynamics::dynamics::DEFAULT_MEMBERSHIP_ITER);
                let _ = writeln!(
                    err,
                    "critical orbit: {:?} after {} steps; N(f) {:?}",
                    report.critical_orbit.verdict, report.critical_orbit.steps, report.verdict
                );
            }
            match bailout(cfg)? {
                Some(bailout) => RenderJob::NonescapingWithBailout { map, bailout, window, grid },
                None => RenderJob::Nonescaping { map, window, grid },
            }
        }
        CommandKind::Mandelbrot => RenderJob::Mandelbrot { stretch: stretch(cfg)?, window, grid },
        _ => RenderJob::ParameterSlice { c: point(cfg.c)?, window, grid },
    };
    let escape = render_tiled(&job, cfg.workers);
    if cfg.trace {
        let _ = writeln!(err, "non-escaping pixels: {} of {}", escape.sentinel_count(), grid.pixel_count());
    }
    let bytes = encode_pgm(&escape, GammaMap::Linear)?;
    emit(cfg, &bytes, out)
}

fn orbit_cmd(cfg: &JobConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    if cfg.steps == 0 {
        return Err(usage("steps must be at least 1"));
    }
    let map = QAMap::new(stretch(cfg)?, point(cfg.c)?);
    let z0 = point(cfg.z0)?;
    let text = orbit_dump(&map, z0, cfg.steps as usize);
    if cfg.trace {
        let radius = bailout(cfg)?.unwrap_or_else(|| julia_bailout(&map));
        let class = iterate_orbit(&map, z0, cfg.max_iter, radius);
        let _ = writeln!(
            err,
            "{:?} after {} steps (bailout {radius}, final modulus {})",
            class.verdict, class.steps, class.final_modulus
        );
    } else {
        bailout(cfg)?;
    }
    emit(cfg, text.as_bytes(), out)
}

/// CSV of the first `n` orbit points, seed first, with 17 significant
/// digits per number.
pub fn orbit_dump(f: &QAMap64, z0: Point, n: usize) -> String {
    let mut s = String::from("step,re,im,modulus\n");
    let mut z = z0;
    for step in 0..n {
        if step > 0 {
            z = f.evaluate(z);
        }
        let _ = writeln!(s, "{step},{:.16e},{:.16e},{:.16e}", z.re, z.im, z.norm());
    }
    s
}

/// Canonical form, conjugacy and orbit-correspondence residual for `g`.
pub fn canonicalize_report(g: &GeneralQuadComposition<f64>) -> Result<String, qrdynamics::Error> {
    let (triple, conj) = canonicalize(g)?;
    let seeds = RESIDUAL_SEEDS.map(|(re, im)| Point::new(re, im));
    let residual = conjugacy_residual(g, &triple, &conj, &seeds, RESIDUAL_STEPS);
    let mut s = String::new();
    let _ = writeln!(s, "K={}", triple.stretch.k());
    let _ = writeln!(s, "theta={}", triple.stretch.theta());
    let _ = writeln!(s, "C={},{}", triple.big_c.re, triple.big_c.im);
    let _ = writeln!(
        s,
        "conjugacy z = {},{} * ({} w + {},{})",
        conj.scale_a.re, conj.scale_a.im, conj.post_scale, conj.shift_b.re, conj.shift_b.im
    );
    let _ = writeln!(s, "residual={residual:e}");
    Ok(s)
}

/// Fixed rays with `t0` in `[-1, 1]` (principal first) and the real segment.
pub fn fixed_ray_report(p: &StretchParams64) -> Result<String, qrdynamics::Error> {
    let rays = fixed_ray_candidates(p)?;
    let segment = real_segment(p)?;
    let mut s = String::new();
    for ray in &rays {
        let _ = writeln!(s, "t0={} phi0={} eta={}", ray.t0, ray.phi0, ray.eta);
    }
    let _ = writeln!(s, "segment [{}, {}] along phi0={}", segment.t_min, segment.t_max, segment.phi0);
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(k: f64, theta: f64, c: (f64, f64)) -> QAMap64 {
        QAMap::new(StretchParams::new(k, theta).unwrap(), Point::new(c.0, c.1))
    }

    fn moduli(csv: &str) -> Vec<f64> {
        csv.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect()
    }

    #[test]
    fn orbit_dump_examples() {
        let zero = Point::new(0.0, 0.0);
        let csv = orbit_dump(&map(1.0, 0.0, (0.0, 0.0)), zero, 3);
        assert_eq!(csv.lines().next(), Some("step,re,im,modulus"));
        assert_eq!(moduli(&csv), vec![0.0; 3]);

        assert_eq!(moduli(&orbit_dump(&map(0.8, 0.0, (-1.25, 0.0)), zero, 5))[1], 1.25);

        let csv = orbit_dump(&map(1.0, 0.0, (-1.0, 0.0)), zero, 4);
        let re: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
        assert_eq!(re, vec![0.0, -1.0, 0.0, -1.0]);
    }

    #[test]
    fn orbit_dump_keeps_full_precision() {
        let f = map(0.7, 0.3, (-0.123456789012345, 0.1));
        let z0 = Point::new(0.1, 0.2);
        let csv = orbit_dump(&f, z0, 3);
        let row: Vec<f64> = csv.lines().nth(3).unwrap().split(',').skip(1).map(|v| v.parse().unwrap()).collect();
        let z2 = f.evaluate(f.evaluate(z0));
        assert_eq!((row[0], row[1]), (z2.re, z2.im));
    }

    #[test]
    fn canonical_input_reports_itself() {
        let g = GeneralQuadComposition::new(
            Point::new(1.0, 0.0),
            Point::new(0.0, 0.0),
            Point::new(-1.25, 0.0),
            StretchParams::new(0.8, 0.0).unwrap(),
        )
        .unwrap();
        let report = canonicalize_report(&g).unwrap();
        assert!(report.contains("K=0.8\n"), "{report}");
        assert!(report.contains("theta=0\n"), "{report}");
        assert!(report.contains("C=-1.25,0\n"), "{report}");
        let residual: f64 = report.lines().last().unwrap().trim_start_matches("residual=").parse().unwrap();
        assert!(residual < 1e-9);
    }

    #[test]
    fn fixed_ray_identity() {
        let report = fixed_ray_report(&StretchParams::identity()).unwrap();
        assert_eq!(report.lines().next(), Some("t0=0 phi0=0 eta=1"));
        assert!(report.ends_with("segment [-2, 0.25] along phi0=0\n"), "{report}");
    }
}
