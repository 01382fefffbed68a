//! Command-line flags and the resolved job configuration.

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qrdynamics::dynamics::{DEFAULT_MEMBERSHIP_ITER, DEFAULT_RENDER_ITER};
use qrdynamics::Window64;

pub const DEFAULT_SIZE: usize = 512;
pub const DEFAULT_ORBIT_STEPS: u32 = 10;

#[derive(Debug, Parser)]
#[command(name = "qrdyn", about = "Dynamics of stretched quadratic maps h_{K,theta}(z)^2 + c", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render the non-escaping set of h_{K,theta}^2 + c to a PGM file.
    Julia {
        #[command(flatten)]
        stretch: StretchArgs,
        #[command(flatten)]
        param: ParamArg,
        #[command(flatten)]
        render: RenderArgs,
        /// Bailout radius; defaults to the certified radius (2 + |c|) / min(K,1)^2.
        #[arg(long)]
        bailout: Option<f64>,
    },
    /// Render the (K, theta)-Mandelbrot set to a PGM file.
    Mandelbrot {
        #[command(flatten)]
        stretch: StretchArgs,
        #[command(flatten)]
        render: RenderArgs,
    },
    /// Render the slice over w = K e^{i theta} for fixed c to a PGM file.
    Slice {
        #[command(flatten)]
        param: ParamArg,
        #[command(flatten)]
        render: RenderArgs,
    },
    /// Dump an orbit as CSV (step,re,im,modulus).
    Orbit {
        #[command(flatten)]
        stretch: StretchArgs,
        #[command(flatten)]
        param: ParamArg,
        /// Seed as re,im.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0,0")]
        z0: (f64, f64),
        /// Number of rows (the seed is row 0).
        #[arg(long, default_value_t = DEFAULT_ORBIT_STEPS)]
        steps: u32,
        /// Iteration budget for the escape classification printed with --trace.
        #[arg(long = "max-iter", default_value_t = DEFAULT_MEMBERSHIP_ITER)]
        max_iter: u32,
        #[arg(long)]
        bailout: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also report the escape classification of the seed on stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Reduce a h_{K,theta} + (a z^2 + b z + c) composition to canonical form.
    Canonicalize {
        /// Stretch factor M of the input composition.
        #[command(flatten)]
        stretch: StretchArgs,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "1,0")]
        a: (f64, f64),
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0,0")]
        b: (f64, f64),
        #[command(flatten)]
        param: ParamArg,
    },
    /// Fixed rays of h_{K,theta}^2 and the real segment of the Mandelbrot set.
    FixedRay {
        #[command(flatten)]
        stretch: StretchArgs,
    },
}

#[derive(Debug, Args)]
pub struct StretchArgs {
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub k: f64,
    /// Angle in radians.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta: f64,
}

#[derive(Debug, Args)]
pub struct ParamArg {
    /// Constant term as re,im.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0,0")]
    pub c: (f64, f64),
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Plane window as x_min,x_max,y_min,y_max.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    pub window: Option<[f64; 4]>,
    #[arg(long, default_value_t = DEFAULT_SIZE)]
    pub width: usize,
    #[arg(long, default_value_t = DEFAULT_SIZE)]
    pub height: usize,
    #[arg(long = "max-iter", default_value_t = DEFAULT_RENDER_ITER)]
    pub max_iter: u32,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report the critical-orbit classification on stderr.
    #[arg(long)]
    pub trace: bool,
}

pub fn parse_complex(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected re,im but got {s:?}"));
    }
    let re = parts[0].trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}"))?;
    let im = parts[1].trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}"))?;
    Ok((re, im))
}

pub fn parse_window(s: &str) -> Result<[f64; 4], String> {
    let vals = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    <[f64; 4]>::try_from(vals).map_err(|_| format!("expected x_min,x_max,y_min,y_max but got {s:?}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Julia,
    Mandelbrot,
    Slice,
    Orbit,
    Canonicalize,
    FixedRay,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Julia => "julia",
            CommandKind::Mandelbrot => "mandelbrot",
            CommandKind::Slice => "slice",
            CommandKind::Orbit => "orbit",
            CommandKind::Canonicalize => "canonicalize",
            CommandKind::FixedRay => "fixed-ray",
        }
    }

    fn is_render(self) -> bool {
        matches!(self, CommandKind::Julia | CommandKind::Mandelbrot | CommandKind::Slice)
    }

    fn default_window(self) -> Window64 {
        match self {
            CommandKind::Mandelbrot => Window64::mandelbrot_default(),
            CommandKind::Slice => Window64::slice_default(),
            _ => Window64::dynamic_default(),
        }
    }
}

/// Every setting of one invocation, with defaults filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct JobConfig {
    pub command: CommandKind,
    pub k: f64,
    pub theta: f64,
    pub c: (f64, f64),
    pub window: [f64; 4],
    pub width: usize,
    pub height: usize,
    pub max_iter: u32,
    pub bailout_override: Option<f64>,
    pub workers: usize,
    pub out_path: Option<PathBuf>,
    pub trace: bool,
    pub a: (f64, f64),
    pub b: (f64, f64),
    pub z0: (f64, f64),
    pub steps: u32,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

impl JobConfig {
    fn base(command: CommandKind, stretch: Option<&StretchArgs>, c: Option<&ParamArg>) -> Self {
        let w = command.default_window();
        Self {
            command,
            k: stretch.map_or(1.0, |s| s.k),
            theta: stretch.map_or(0.0, |s| s.theta),
            c: c.map_or((0.0, 0.0), |p| p.c),
            window: [w.x_min, w.x_max, w.y_min, w.y_max],
            width: DEFAULT_SIZE,
            height: DEFAULT_SIZE,
            max_iter: if command.is_render() { DEFAULT_RENDER_ITER } else { DEFAULT_MEMBERSHIP_ITER },
            bailout_override: None,
            workers: 1,
            out_path: None,
            trace: false,
            a: (1.0, 0.0),
            b: (0.0, 0.0),
            z0: (0.0, 0.0),
            steps: DEFAULT_ORBIT_STEPS,
        }
    }

    fn with_render(mut self, r: &RenderArgs) -> Self {
        if let Some(w) = r.window {
            self.window = w;
        }
        self.width = r.width;
        self.height = r.height;
        self.max_iter = r.max_iter;
        self.workers = r.workers.unwrap_or_else(default_workers);
        self.out_path = r.out.clone();
        self.trace = r.trace;
        self
    }

    pub fn from_cli(cli: &Cli) -> Self {
        match &cli.command {
            Command::Julia { stretch, param, render, bailout } => {
                let mut cfg = Self::base(CommandKind::Julia, Some(stretch), Some(param)).with_render(render);
                cfg.bailout_override = *bailout;
                cfg
            }
            Command::Mandelbrot { stretch, render } => {
                Self::base(CommandKind::Mandelbrot, Some(stretch), None).with_render(render)
            }
            Command::Slice { param, render } => Self::base(CommandKind::Slice, None, Some(param)).with_render(render),
            Command::Orbit { stretch, param, z0, steps, max_iter, bailout, out, trace } => {
                let mut cfg = Self::base(CommandKind::Orbit, Some(stretch), Some(param));
                cfg.z0 = *z0;
                cfg.steps = *steps;
                cfg.max_iter = *max_iter;
                cfg.bailout_override = *bailout;
                cfg.out_path = out.clone();
                cfg.trace = *trace;
                cfg
            }
            Command::Canonicalize { stretch, a, b, param } => {
                let mut cfg = Self::base(CommandKind::Canonicalize, Some(stretch), Some(param));
                cfg.a = *a;
                cfg.b = *b;
                cfg
            }
            Command::FixedRay { stretch } => Self::base(CommandKind::FixedRay, Some(stretch), None),
        }
    }

    /// Parses a provenance line written by the [`fmt::Display`] impl.
    pub fn from_provenance(line: &str) -> Result<Self, clap::Error> {
        let args = line.split_whitespace().map(str::to_owned);
        Cli::try_parse_from(args).map(|cli| Self::from_cli(&cli))
    }
}

fn pair(p: (f64, f64)) -> String {
    format!("{},{}", p.0, p.1)
}

/// The provenance line: the command with every setting spelled out.
impl fmt::Display for JobConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "qrdyn {}", self.command.name())?;
        let stretch = format!(" --k={} --theta={}", self.k, self.theta);
        let c = format!(" --c={}", pair(self.c));
        let render = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            let [a, b, cc, d] = self.window;
            write!(
                f,
                " --window={a},{b},{cc},{d} --width={} --height={} --max-iter={} --workers={}",
                self.width, self.height, self.max_iter, self.workers
            )?;
            if let Some(out) = &self.out_path {
                write!(f, " --out={}", out.display())?;
            }
            if self.trace {
                write!(f, " --trace")?;
            }
            Ok(())
        };
        match self.command {
            CommandKind::Julia => {
                write!(f, "{stretch}{c}")?;
                if let Some(b) = self.bailout_override {
                    write!(f, " --bailout={b}")?;
                }
                render(f)
            }
            CommandKind::Mandelbrot => {
                write!(f, "{stretch}")?;
                render(f)
            }
            CommandKind::Slice => {
                write!(f, "{c}")?;
                render(f)
            }
            CommandKind::Orbit => {
                write!(f, "{stretch}{c} --z0={} --steps={} --max-iter={}", pair(self.z0), self.steps, self.max_iter)?;
                if let Some(b) = self.bailout_override {
                    write!(f, " --bailout={b}")?;
                }
                if let Some(out) = &self.out_path {
                    write!(f, " --out={}", out.display())?;
                }
                if self.trace {
                    write!(f, " --trace")?;
                }
                Ok(())
            }
            CommandKind::Canonicalize => write!(f, "{stretch} --a={} --b={}{c}", pair(self.a), pair(self.b)),
            CommandKind::FixedRay => write!(f, "{stretch}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> JobConfig {
        let cli = Cli::try_parse_from(std::iter::once("qrdyn").chain(args.iter().copied())).unwrap();
        JobConfig::from_cli(&cli)
    }

    #[test]
    fn complex_flag_syntax() {
        assert_eq!(parse_complex("-1.25,0"), Ok((-1.25, 0.0)));
        assert_eq!(parse_complex(" 0.5 , -2e-3"), Ok((0.5, -0.002)));
        assert!(parse_complex("1").is_err());
        assert!(parse_complex("a,b").is_err());
        assert!(parse_window("1,2,3").is_err());
    }

    #[test]
    fn negative_values_parse() {
        let cfg = parse(&["julia", "--k", "0.8", "--theta", "-0.2", "--c", "-1.25,-0.5"]);
        assert_eq!((cfg.k, cfg.theta, cfg.c), (0.8, -0.2, (-1.25, -0.5)));
        assert_eq!(cfg.window, [-2.5, 2.5, -2.5, 2.5]);
        assert_eq!((cfg.width, cfg.height, cfg.max_iter), (512, 512, 256));
    }

    #[test]
    fn defaults_by_command() {
        assert_eq!(parse(&["mandelbrot"]).window, [-4.5, 2.5, -3.5, 3.5]);
        assert_eq!(parse(&["slice"]).window, [-2.0, 2.0, -2.0, 2.0]);
        assert_eq!(parse(&["orbit"]).max_iter, 1000);
    }

    #[test]
    fn provenance_round_trip() {
        let cases: &[&[&str]] = &[
            &["julia", "--k", "0.8", "--c", "-0.21,-0.78", "--out", "fig1.pgm", "--bailout", "7", "--trace"],
            &[
                "mandelbrot",
                "--k",
                "0.7",
                "--theta",
                "0.2617993877991494",
                "--window",
                "-1,1,-0.5,0.5",
                "--workers",
                "3",
            ],
            &["slice", "--c", "-1.5,0", "--width", "33", "--height", "17", "--max-iter", "99"],
            &["orbit", "--k", "0.1", "--z0", "-0.3,1e-7", "--steps", "4", "--trace"],
            &["canonicalize", "--a", "2,-1", "--b", "0.5,0.25", "--c", "-1,0", "--k", "3", "--theta", "1.1"],
            &["fixed-ray", "--k", "1.3", "--theta", "-0.1"],
        ];
        for args in cases {
            let cfg = parse(args);
            let line = cfg.to_string();
            assert_eq!(JobConfig::from_provenance(&line).unwrap(), cfg, "{line}");
        }
    }
}
