//! Command implementations behind the `bryantlab` binary.
//!
//! Each command reads its inputs, runs the library and returns the rendered
//! output together with a pass/fail flag. Exit codes: 0 pass, 1 fail,
//! 2 input error.
//!
//! | control          | default | used by            |
//! |------------------|---------|--------------------|
//! | `fd_step`        | 1e-4    | surface            |
//! | `rtol`           | 1e-10   | holonomy           |
//! | `atol`           | 1e-12   | holonomy           |
//! | `su2_tol`        | 1e-8    | holonomy           |
//! | `pole_clearance` | 1e-3    | holonomy           |

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connection::{period_problem, ConnectionError, HiggsField, PathLoop, PathSpec, TransportControls};
use crate::ends::{end_report, EndsError, MeromorphicFramePair, SingularEnd};
use crate::frames::{catalog, check_bryant, BryantFrame, FrameData, FrameError, CATALOG_NAMES};
use crate::hyperbolic::{curvature_grid, sample_mesh, GeometryError, Grid};
use crate::parabolic::{
    bounds_grid, enumerate_candidates, existence_bounds, stability_verdict, write_bounds_csv,
    ParabolicError, Stability, StabilityInput,
};

#[derive(Debug, Error)]
pub enum JobError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("invalid control {name} = {value}: must be positive")]
    BadControl { name: &'static str, value: f64 },
    #[error("format {0:?} is not available for this command")]
    BadFormat(Format),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Connection(#[from] ConnectionError),
    #[error(transparent)]
    Ends(#[from] EndsError),
    #[error(transparent)]
    Parabolic(#[from] ParabolicError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl JobError {
    /// Every job error is an input error.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Obj,
    Csv,
}

/// Numeric controls shared by all commands.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Controls {
    pub fd_step: f64,
    pub rtol: f64,
    pub atol: f64,
    pub su2_tol: f64,
    pub pole_clearance: f64,
}

impl Default for Controls {
    fn default() -> Self {
        let t = TransportControls::default();
        Self {
            fd_step: 1e-4,
            rtol: t.rtol,
            atol: t.atol,
            su2_tol: 1e-8,
            pole_clearance: t.pole_clearance,
        }
    }
}

impl Controls {
    pub fn validate(&self) -> Result<(), JobError> {
        for (name, value) in [
            ("step", self.fd_step),
            ("rtol", self.rtol),
            ("atol", self.atol),
            ("su2-tol", self.su2_tol),
            ("pole-clearance", self.pole_clearance),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(JobError::BadControl { name, value });
            }
        }
        Ok(())
    }

    pub fn transport(&self) -> TransportControls {
        TransportControls {
            rtol: self.rtol,
            atol: self.atol,
            pole_clearance: self.pole_clearance,
        }
    }
}

/// Rendered command output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub pass: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, JobError> {
    let text = fs::read_to_string(path).map_err(|source| JobError::Io {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| JobError::Parse {
        path: path.to_owned(),
        source,
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn json_only(format: Format) -> Result<(), JobError> {
    match format {
        Format::Json => Ok(()),
        other => Err(JobError::BadFormat(other)),
    }
}

/// Exact Bryant check of a frame file; passes iff the frame is Bryant.
pub fn cmd_verify(frame_file: &Path, format: Format) -> Result<Outcome, JobError> {
    json_only(format)?;
    let data: FrameData = read_json(frame_file)?;
    let report = check_bryant(&data.matrix);
    Ok(Outcome {
        output: to_json(&report),
        pass: report.is_bryant,
    })
}

#[derive(Debug, Serialize)]
struct CurvatureEntry {
    z: [f64; 2],
    #[serde(rename = "H", skip_serializing_if = "Option::is_none")]
    h: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Debug, Serialize)]
struct SurfaceReport {
    grid: Grid,
    step: f64,
    vertices: usize,
    faces: usize,
    mean_abs_h_minus_1: Option<f64>,
    max_abs_h_minus_1: Option<f64>,
    degenerate_points: usize,
    samples: Vec<CurvatureEntry>,
}

/// Mesh and curvature of a frame over a square grid. With `Format::Obj` the
/// output is the mesh; with `Format::Json` the curvature report, and the
/// mesh is also written to `obj_out` when given.
pub fn cmd_surface(
    frame_file: &Path,
    grid: Grid,
    controls: &Controls,
    format: Format,
    obj_out: Option<&Path>,
) -> Result<Outcome, JobError> {
    controls.validate()?;
    let frame: BryantFrame = read_json(frame_file)?;
    let mesh = sample_mesh(&frame, grid);
    if format == Format::Obj {
        return Ok(Outcome {
            output: mesh.to_obj(),
            pass: true,
        });
    }
    json_only(format)?;
    if let Some(path) = obj_out {
        fs::write(path, mesh.to_obj()).map_err(|source| JobError::Io {
            path: path.to_owned(),
            source,
        })?;
    }
    let samples = curvature_grid(&frame, grid, controls.fd_step);
    let devs: Vec<f64> = samples
        .iter()
        .filter_map(|s| s.as_ref().ok())
        .map(|s| (s.mean_curvature - 1.0).abs())
        .collect();
    let entries: Vec<CurvatureEntry> = grid
        .points()
        .iter()
        .zip(&samples)
        .map(|(z, s)| CurvatureEntry {
            z: [z.re, z.im],
            h: s.as_ref().ok().map(|s| s.mean_curvature),
            error: s.as_ref().err().map(|e| match e {
                GeometryError::DegenerateMetric { .. } => "DegenerateMetric".to_owned(),
                other => other.to_string(),
            }),
        })
        .collect();
    let report = SurfaceReport {
        grid,
        step: controls.fd_step,
        vertices: mesh.valid_vertex_count(),
        faces: mesh.faces.len(),
        mean_abs_h_minus_1: (!devs.is_empty()).then(|| devs.iter().sum::<f64>() / devs.len() as f64),
        max_abs_h_minus_1: devs.iter().copied().reduce(f64::max),
        degenerate_points: samples
            .iter()
            .filter(|s| matches!(s, Err(GeometryError::DegenerateMetric { .. })))
            .count(),
        samples: entries,
    };
    Ok(Outcome {
        output: to_json(&report),
        pass: true,
    })
}

/// Generator holonomies of a Higgs field; passes iff all lie in `SU(2)`.
///
/// The loops file is a JSON array of path specifications sharing a base point.
pub fn cmd_holonomy(
    higgs_file: &Path,
    loops_file: &Path,
    controls: &Controls,
    format: Format,
) -> Result<Outcome, JobError> {
    json_only(format)?;
    controls.validate()?;
    let theta: HiggsField = read_json(higgs_file)?;
    let specs: Vec<PathSpec> = read_json(loops_file)?;
    let loops = specs
        .iter()
        .map(PathSpec::to_loop)
        .collect::<Result<Vec<PathLoop>, _>>()?;
    let report = period_problem(&theta, &loops, controls.su2_tol, &controls.transport())?;
    Ok(Outcome {
        output: to_json(&report),
        pass: report.passes(),
    })
}

/// End analysis; passes iff the frame solves the Bryant equations of the
/// end and satisfies the pole-order bound.
pub fn cmd_end(alpha: &str, frame_file: &Path, format: Format) -> Result<Outcome, JobError> {
    json_only(format)?;
    let end: SingularEnd = alpha.parse()?;
    let data: FrameData = read_json(frame_file)?;
    let report = end_report(&end, &MeromorphicFramePair::from_matrix(&data.matrix))?;
    Ok(Outcome {
        output: to_json(&report),
        pass: report.passes(),
    })
}

/// Stability relative to the candidates in the file, extended by every
/// degree in `enumerate` with every match pattern; passes unless unstable.
pub fn cmd_stability(
    data_file: &Path,
    enumerate: Option<(i64, i64)>,
    format: Format,
) -> Result<Outcome, JobError> {
    json_only(format)?;
    let mut input: StabilityInput = read_json(data_file)?;
    if let Some((lo, hi)) = enumerate {
        input.candidates.extend(enumerate_candidates(&input.data, lo, hi)?);
    }
    let report = stability_verdict(&input.data, &input.candidates)?;
    Ok(Outcome {
        output: to_json(&report),
        pass: report.verdict != Stability::Unstable,
    })
}

/// Bounds for one `(g, d, d_P)`, passing iff the degree hypothesis holds;
/// with `grid` the arguments are maxima and every entry is reported.
pub fn cmd_bounds(g: i64, d: i64, d_p: i64, grid: bool, format: Format) -> Result<Outcome, JobError> {
    let (rows, pass) = if grid {
        (bounds_grid(g, d, d_p), true)
    } else {
        let r = existence_bounds(g, d, d_p);
        let pass = r.hypothesis_met;
        (vec![r], pass)
    };
    let output = match format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_bounds_csv(&rows, &mut buf)?;
            String::from_utf8(buf).expect("csv is utf-8")
        }
        Format::Json if grid => to_json(&rows),
        Format::Json => to_json(&rows[0]),
        Format::Obj => return Err(JobError::BadFormat(format)),
    };
    Ok(Outcome { output, pass })
}

/// A catalog frame as JSON, or the list of names.
pub fn cmd_catalog(name: Option<&str>) -> Result<Outcome, JobError> {
    let output = match name {
        Some(n) => to_json(&catalog(n)?),
        None => CATALOG_NAMES.join("\n") + "\n",
    };
    Ok(Outcome { output, pass: true })
}

/// Parses `re,im` or `re`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected re,im; got {s:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    fn catalog_file(name: &str) -> tempfile::NamedTempFile {
        file(&cmd_catalog(Some(name)).unwrap().output)
    }

    #[test]
    fn verify_exit_codes() {
        let f = catalog_file("horosphere");
        assert_eq!(cmd_verify(f.path(), Format::Json).unwrap().exit_code(), 0);
        let z = r#"{"terms":[{"exp":1,"re":"1"}]}"#;
        let bad = file(&format!(
            r#"{{"matrix":[[{{"terms":[{{"exp":0,"re":"1"}}]}},{z}],[{z},{{"terms":[{{"exp":0,"re":"1"}},{{"exp":2,"re":"1"}}]}}]]}}"#
        ));
        let out = cmd_verify(bad.path(), Format::Json).unwrap();
        assert_eq!(out.exit_code(), 1);
        let v: serde_json::Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v["null_residual"]["terms"][0]["re"], "-1");
        assert_eq!(v["null_residual"]["terms"][0]["exp"], 0);
        let junk = file("{ not json");
        assert_eq!(cmd_verify(junk.path(), Format::Json).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn surface_reports() {
        let f = catalog_file("horosphere");
        let ctl = Controls::default();
        let grid = Grid::new(Complex64::new(0.0, 0.0), 1.0, 10);
        let out = cmd_surface(f.path(), grid, &ctl, Format::Json, None).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v["vertices"], 100);
        assert!(v["mean_abs_h_minus_1"].as_f64().unwrap() <= 1e-4);

        let single = Grid::new(Complex64::new(0.3, 0.1), 1.0, 1);
        let v: serde_json::Value =
            serde_json::from_str(&cmd_surface(f.path(), single, &ctl, Format::Json, None).unwrap().output).unwrap();
        assert_eq!((v["vertices"].as_u64(), v["faces"].as_u64()), (Some(1), Some(0)));
        assert!(v["samples"][0]["H"].is_number());

        let cusp = catalog_file("cusp-degree2");
        let grid = Grid::new(Complex64::new(0.0, 0.0), 1.0, 3);
        let v: serde_json::Value =
            serde_json::from_str(&cmd_surface(cusp.path(), grid, &ctl, Format::Json, None).unwrap().output).unwrap();
        assert_eq!(v["samples"][4]["error"], "DegenerateMetric");
        assert_eq!(v["degenerate_points"], 1);
    }

    #[test]
    fn bounds_and_end() {
        let out = cmd_bounds(0, 3, 3, false, Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!(v["dim_M_lower"], 3);
        assert_eq!(cmd_bounds(2, 5, 0, false, Format::Json).unwrap().exit_code(), 1);
        let csv = cmd_bounds(1, 2, 1, true, Format::Csv).unwrap().output;
        assert_eq!(csv.lines().count(), 13);

        let frame = file(
            r#"{"matrix":[[{"terms":[{"exp":1,"re":"1"}]},{"terms":[]}],[{"terms":[]},{"terms":[{"exp":-1,"re":"1"}]}]]}"#,
        );
        let out = cmd_end("1/2", frame.path(), Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.output).unwrap();
        assert_eq!((v["stareq_pass"].as_bool(), v["polo_pass"].as_bool()), (Some(false), Some(true)));
        assert_eq!(out.exit_code(), 1);
        assert_eq!(cmd_end("3/2", frame.path(), Format::Json).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn controls_are_validated() {
        let bad = Controls {
            rtol: -1.0,
            ..Controls::default()
        };
        assert!(matches!(bad.validate(), Err(JobError::BadControl { name: "rtol", .. })));
        assert_eq!(parse_complex("0.5,-1").unwrap(), Complex64::new(0.5, -1.0));
        assert!(parse_complex("a").is_err());
    }
}
