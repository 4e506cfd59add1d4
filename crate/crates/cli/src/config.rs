use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use hadamard_coord::{catalog_names, QuadratureSpec, Rectangle, Theorem, Tolerances};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Flags shared by every sweep subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct SweepArgs {
    /// Catalog function name (repeatable); defaults to the whole catalog.
    #[arg(long = "fn", value_name = "NAME")]
    pub functions: Vec<String>,
    /// Rectangle as a,b,c,d (repeatable); defaults to 0,1,0,1.
    #[arg(long, value_name = "A,B,C,D", allow_hyphen_values = true)]
    pub rect: Vec<String>,
    /// Single evaluation point x,y instead of the interior grid.
    #[arg(long, value_name = "X,Y", allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Points per axis.
    #[arg(long, value_name = "G")]
    pub grid: Option<usize>,
    /// T1, T2, T3 or a corollary label such as C1-3 (repeatable).
    #[arg(long, value_name = "ID")]
    pub theorem: Vec<String>,
    /// Exponent q (repeatable).
    #[arg(long, value_name = "Q", allow_hyphen_values = true)]
    pub q: Vec<f64>,
    /// Gauss–Legendre nodes per panel.
    #[arg(long, value_name = "N")]
    pub nodes: Option<usize>,
    /// Panels per axis.
    #[arg(long, value_name = "M")]
    pub panels: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, value_name = "TOL")]
    pub abs_tol: Option<f64>,
    #[arg(long, value_name = "TOL")]
    pub rel_tol: Option<f64>,
    /// key=value file; flags given on the command line win.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

impl SweepArgs {
    /// Fills unset fields from `--config`, if any.
    pub fn merged(&self) -> CliResult<SweepArgs> {
        let Some(path) = &self.config else {
            return Ok(self.clone());
        };
        let file = parse_config_file(path)?;
        Ok(SweepArgs {
            functions: prefer_vec(&self.functions, file.functions),
            rect: prefer_vec(&self.rect, file.rect),
            point: self.point.clone().or(file.point),
            grid: self.grid.or(file.grid),
            theorem: prefer_vec(&self.theorem, file.theorem),
            q: prefer_vec(&self.q, file.q),
            nodes: self.nodes.or(file.nodes),
            panels: self.panels.or(file.panels),
            out: self.out.clone().or(file.out),
            format: self.format.or(file.format),
            abs_tol: self.abs_tol.or(file.abs_tol),
            rel_tol: self.rel_tol.or(file.rel_tol),
            config: None,
        })
    }
}

fn prefer_vec<T: Clone>(flag: &[T], file: Vec<T>) -> Vec<T> {
    if flag.is_empty() {
        file
    } else {
        flag.to_vec()
    }
}

pub fn parse_config_file(path: &Path) -> CliResult<SweepArgs> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config_text(&text)
}

pub fn parse_config_text(text: &str) -> CliResult<SweepArgs> {
    let mut args = SweepArgs::default();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |why: &str| CliError::usage(format!("config line {}: {why}: {raw:?}", n + 1));
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| bad("expected key=value"))?;
        let (key, value) = (key.trim(), value.trim().to_string());
        match key {
            "fn" => args.functions.push(value),
            "rect" => args.rect.push(value),
            "point" => args.point = Some(value),
            "grid" => args.grid = Some(value.parse().map_err(|_| bad("grid"))?),
            "theorem" => args.theorem.push(value),
            "q" => args.q.push(value.parse().map_err(|_| bad("q"))?),
            "nodes" => args.nodes = Some(value.parse().map_err(|_| bad("nodes"))?),
            "panels" => args.panels = Some(value.parse().map_err(|_| bad("panels"))?),
            "out" => args.out = Some(PathBuf::from(value)),
            "format" => {
                args.format = Some(Format::from_str(&value, true).map_err(|_| bad("format"))?)
            }
            "abs-tol" => args.abs_tol = Some(value.parse().map_err(|_| bad("abs-tol"))?),
            "rel-tol" => args.rel_tol = Some(value.parse().map_err(|_| bad("rel-tol"))?),
            _ => return Err(bad("unknown key")),
        }
    }
    Ok(args)
}

/// Validated sweep parameters.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub functions: Vec<String>,
    pub rects: Vec<Rectangle<f64>>,
    pub point: Option<(f64, f64)>,
    pub grid: usize,
    pub theorems: Vec<Theorem>,
    pub q_values: Vec<f64>,
    pub quad: QuadratureSpec,
    pub tolerances: Tolerances<f64>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl SweepConfig {
    pub fn resolve(args: &SweepArgs, default_grid: usize) -> CliResult<Self> {
        let args = args.merged()?;
        let functions = if args.functions.is_empty() {
            catalog_names().map(str::to_string).collect()
        } else {
            args.functions.clone()
        };
        for name in &functions {
            hadamard_coord::catalog_lookup::<f64>(name)?;
        }
        let rects = if args.rect.is_empty() {
            vec![Rectangle::unit()]
        } else {
            args.rect
                .iter()
                .map(|s| parse_rect(s))
                .collect::<CliResult<_>>()?
        };
        let point = match &args.point {
            Some(s) => {
                let [x, y] = parse_floats::<2>(s, "point")?;
                for r in &rects {
                    r.point(x, y)?;
                }
                Some((x, y))
            }
            None => None,
        };
        let grid = args.grid.unwrap_or(default_grid);
        if grid == 0 {
            return Err(CliError::usage("grid must be at least 1"));
        }
        let theorems = args
            .theorem
            .iter()
            .map(|s| s.parse::<Theorem>().map_err(CliError::usage))
            .collect::<CliResult<Vec<_>>>()?;
        for &q in &args.q {
            if !q.is_finite() {
                return Err(CliError::usage(format!("q must be finite, got {q}")));
            }
        }
        let defaults = QuadratureSpec::default();
        let quad = QuadratureSpec::new(
            args.nodes.unwrap_or(defaults.nodes_per_panel()),
            args.panels.unwrap_or(defaults.panels_per_axis()),
        )?;
        let tol_defaults = Tolerances::<f64>::default();
        let tolerances = Tolerances::new(
            args.abs_tol.unwrap_or(tol_defaults.abs_tol()),
            args.rel_tol.unwrap_or(tol_defaults.rel_tol()),
        )?;
        Ok(SweepConfig {
            functions,
            rects,
            point,
            grid,
            theorems,
            q_values: args.q.clone(),
            quad,
            tolerances,
            out: args.out.clone(),
            format: args.format.unwrap_or(Format::Csv),
        })
    }

    /// Evaluation points on `rect`: the fixed point or the interior grid.
    pub fn points(&self, rect: &Rectangle<f64>) -> CliResult<Vec<(f64, f64)>> {
        match self.point {
            Some((x, y)) => {
                rect.point(x, y)?;
                Ok(vec![(x, y)])
            }
            None => Ok(rect
                .interior_grid(self.grid)
                .iter()
                .map(|p| (p.x(), p.y()))
                .collect()),
        }
    }
}

pub fn parse_rect(s: &str) -> CliResult<Rectangle<f64>> {
    let [a, b, c, d] = parse_floats::<4>(s, "rect")?;
    Ok(Rectangle::new(a, b, c, d)?)
}

fn parse_floats<const N: usize>(s: &str, what: &str) -> CliResult<[f64; N]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || {
        CliError::usage(format!(
            "--{what} expects {N} comma-separated numbers, got {s:?}"
        ))
    };
    if parts.len() != N {
        return Err(bad());
    }
    let mut out = [0.0; N];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.parse().map_err(|_| bad())?;
    }
    Ok(out)
}

/// `rect` column text, matching the `--rect` syntax.
pub fn rect_label(r: &Rectangle<f64>) -> String {
    r.to_f64()
        .iter()
        .map(|&v| crate::number::fmt12(v))
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_text_round_trip() {
        let args = parse_config_text(
            "# sweep\nfn = product\nfn=sqproduct\nrect=0,1,0,1\nrect=-1,2,0,3\nq=2\ngrid=3\nformat=json\nabs-tol=1e-8\n",
        )
        .unwrap();
        assert_eq!(args.functions, ["product", "sqproduct"]);
        assert_eq!(args.rect.len(), 2);
        assert_eq!(args.q, [2.0]);
        assert_eq!(args.grid, Some(3));
        assert_eq!(args.format, Some(Format::Json));
        assert_eq!(args.abs_tol, Some(1e-8));
    }

    #[test]
    fn config_errors() {
        assert!(parse_config_text("colour=blue").is_err());
        assert!(parse_config_text("grid").is_err());
        assert!(parse_config_text("grid=x").is_err());
    }

    #[test]
    fn degenerate_rect_rejected() {
        let err = parse_rect("0,1,1,1").unwrap_err();
        assert!(matches!(
            err,
            CliError::Core(hadamard_coord::Error::DegenerateDomain { .. })
        ));
        assert!(parse_rect("0,1,0").is_err());
    }

    #[test]
    fn resolve_defaults() {
        let cfg = SweepConfig::resolve(&SweepArgs::default(), 5).unwrap();
        assert_eq!(cfg.functions.len(), 6);
        assert_eq!(cfg.rects, vec![Rectangle::unit()]);
        assert_eq!(cfg.points(&cfg.rects[0]).unwrap().len(), 25);
        assert_eq!(rect_label(&cfg.rects[0]), "0,1,0,1");
    }

    #[test]
    fn point_outside_rect_rejected() {
        let args = SweepArgs {
            point: Some("2,0".into()),
            ..SweepArgs::default()
        };
        assert!(SweepConfig::resolve(&args, 5).is_err());
    }
}
