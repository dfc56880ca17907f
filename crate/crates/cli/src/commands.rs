//! Subcommand definitions and implementations.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use purcell_core::{
    assemble_connection, filtration, grid_classify, holonomy_area_integral, integrate_gait,
    net_displacement, ExecutionMode, GaitDocument, GridSpec, ShapePoint, SwimmerParams, Variant,
};

use crate::format::{fmt_sig, quantize_json};
use crate::reference::{normalized_delta, set_match_deltas, REFERENCE_TABLE};
use crate::{CliError, SCHEMA_VERSION};

#[derive(Parser, Debug)]
#[command(
    name = "purcell",
    version,
    about = "Geometric mechanics of the three-link swimmer and its symmetric cousin"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Local connection form A(x) at one shape point
    Connection(ConnectionArgs),
    /// Controllability filtration generators and ranks at one shape point
    Filtration(FiltrationArgs),
    /// Classify a shape-space grid; writes a CSV of verdicts
    ClassifyGrid(ClassifyGridArgs),
    /// Integrate a gait file through the reconstruction equation
    Simulate(SimulateArgs),
    /// Recompute the published generator table and report deltas
    AppendixTable(AppendixArgs),
    /// Compare gait displacement against the curvature area integral
    Holonomy(HolonomyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Basic,
    Symmetric,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Basic => Variant::Basic,
            VariantArg::Symmetric => Variant::Symmetric,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct ModelArgs {
    /// Swimmer variant
    #[arg(long, value_enum)]
    pub variant: VariantArg,
    /// Drag coefficient
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    /// Half link length
    #[arg(long = "L", default_value_t = 1.0)]
    pub l: f64,
}

impl ModelArgs {
    fn params(&self) -> Result<SwimmerParams, CliError> {
        SwimmerParams::new(self.k, self.l, self.variant.into())
            .map_err(|e| CliError::numerical(e.to_string()))
    }
}

#[derive(Args, Debug)]
pub struct PointArgs {
    /// First joint angle (radians unless --degrees)
    #[arg(long)]
    pub alpha1: f64,
    /// Second joint angle (radians unless --degrees)
    #[arg(long)]
    pub alpha2: f64,
    /// Interpret the angles as degrees
    #[arg(long, default_value_t = false)]
    pub degrees: bool,
}

impl PointArgs {
    fn point(&self) -> ShapePoint {
        if self.degrees {
            ShapePoint::new(self.alpha1.to_radians(), self.alpha2.to_radians())
        } else {
            ShapePoint::new(self.alpha1, self.alpha2)
        }
    }
}

#[derive(Args, Debug)]
pub struct ConnectionArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub point: PointArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to a file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FiltrationArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub point: PointArgs,
    /// Filtration depth (number of generator levels)
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ClassifyGridArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Nodes per axis over [0, 2pi)
    #[arg(long, default_value_t = 33)]
    pub resolution: usize,
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    /// Destination CSV path
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Gait document (JSON)
    #[arg(long)]
    pub gait: PathBuf,
    #[arg(long, default_value_t = 4096)]
    pub steps: usize,
    /// Destination CSV path for the trajectory
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct AppendixArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct HolonomyArgs {
    /// Gait document (JSON); must be the symmetric variant at L = 1
    #[arg(long)]
    pub gait: PathBuf,
    /// Quadrature resolution per axis
    #[arg(long, default_value_t = 512)]
    pub resolution: usize,
    /// Integrator steps for the displacement side
    #[arg(long, default_value_t = 4096)]
    pub steps: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Connection(a) => cmd_connection(a),
        Command::Filtration(a) => cmd_filtration(a),
        Command::ClassifyGrid(a) => cmd_classify_grid(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::AppendixTable(a) => cmd_appendix_table(a),
        Command::Holonomy(a) => cmd_holonomy(a),
    }
}

fn document(command: &str, inputs: serde_json::Value, payload: serde_json::Value) -> String {
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "payload": payload,
        "provenance": {
            "toolkit": "purcell",
            "version": env!("CARGO_PKG_VERSION"),
        },
    });
    quantize_json(&mut doc);
    let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
    text.push('\n');
    text
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, content),
        None => {
            std::io::stdout()
                .write_all(content.as_bytes())
                .map_err(|e| CliError::io(e.to_string()))?;
            Ok(())
        }
    }
}

fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content)
        .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))
}

fn load_gait(path: &Path) -> Result<GaitDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::gait(format!("{}: {e}", path.display())))
}

fn vec3_json(v: [f64; 3]) -> serde_json::Value {
    json!(v)
}

fn matrix_json(a: &[[f64; 2]; 3]) -> serde_json::Value {
    json!(a)
}

fn cmd_connection(args: ConnectionArgs) -> Result<(), CliError> {
    let params = args.model.params()?;
    let x = args.point.point();
    let conn = assemble_connection(&x, &params)?;
    let inputs = json!({
        "variant": format!("{:?}", params.variant).to_lowercase(),
        "alpha1": x.alpha1,
        "alpha2": x.alpha2,
        "k": params.k,
        "L": params.l,
    });
    let content = match args.format {
        Format::Json => document(
            "connection",
            inputs,
            json!({
                "rows": ["xi_x", "xi_y", "xi_theta"],
                "columns": ["alpha1_dot", "alpha2_dot"],
                "a": matrix_json(&conn.a),
                "sign_convention": "xi = -A(x) * xdot",
            }),
        ),
        Format::Csv => {
            let mut s = String::from("component,alpha1_dot,alpha2_dot\n");
            for (name, row) in ["xi_x", "xi_y", "xi_theta"].iter().zip(conn.a.iter()) {
                s.push_str(&format!("{name},{},{}\n", fmt_sig(row[0]), fmt_sig(row[1])));
            }
            s
        }
    };
    emit(&args.out, &content)
}

fn cmd_filtration(args: FiltrationArgs) -> Result<(), CliError> {
    let params = args.model.params()?;
    let x = args.point.point();
    let f = filtration(&x, &params, args.depth)?;
    let inputs = json!({
        "variant": format!("{:?}", params.variant).to_lowercase(),
        "alpha1": x.alpha1,
        "alpha2": x.alpha2,
        "k": params.k,
        "L": params.l,
        "depth": args.depth,
    });
    let content = match args.format {
        Format::Json => {
            let levels: Vec<serde_json::Value> = f
                .levels
                .iter()
                .enumerate()
                .map(|(i, gens)| {
                    json!({
                        "level": i + 1,
                        "generators": gens.iter().map(|g| vec3_json(g.as_array())).collect::<Vec<_>>(),
                    })
                })
                .collect();
            document(
                "filtration",
                inputs,
                json!({
                    "levels": levels,
                    "weak_ranks": f.weak_ranks,
                    "strong_ranks": f.strong_ranks,
                    "weak_rank": f.weak_rank(),
                    "strong_rank": f.strong_rank(),
                }),
            )
        }
        Format::Csv => {
            let mut s = String::from("level,generator,xi_x,xi_y,xi_theta\n");
            for (i, gens) in f.levels.iter().enumerate() {
                for (j, g) in gens.iter().enumerate() {
                    let v = g.as_array();
                    s.push_str(&format!(
                        "{},{},{},{},{}\n",
                        i + 1,
                        j,
                        fmt_sig(v[0]),
                        fmt_sig(v[1]),
                        fmt_sig(v[2])
                    ));
                }
            }
            s.push_str(&format!("summary,weak_rank,{},,\n", f.weak_rank()));
            s.push_str(&format!("summary,strong_rank,{},,\n", f.strong_rank()));
            s
        }
    };
    emit(&args.out, &content)
}

fn cmd_classify_grid(args: ClassifyGridArgs) -> Result<(), CliError> {
    let params = args.model.params()?;
    let spec = GridSpec::uniform_torus(args.resolution)?;
    let grid = grid_classify(&spec, &params, args.depth, ExecutionMode::Parallel)?;
    let mut csv = String::from("alpha1,alpha2,classification,weak_rank,strong_rank\n");
    for (x, v) in spec.nodes().zip(grid.verdicts.iter()) {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_sig(x.alpha1),
            fmt_sig(x.alpha2),
            v.classification.label(),
            v.weak_rank,
            v.strong_rank
        ));
    }
    write_file(&args.out, &csv)?;
    let summary = document(
        "classify-grid",
        json!({
            "variant": format!("{:?}", params.variant).to_lowercase(),
            "resolution": args.resolution,
            "depth": args.depth,
            "k": params.k,
            "L": params.l,
            "out": args.out.display().to_string(),
        }),
        json!({
            "nodes": grid.verdicts.len(),
            "strong": grid.count(purcell_core::Classification::Strong),
            "weak": grid.count(purcell_core::Classification::Weak),
            "uncontrollable": grid.count(purcell_core::Classification::UncontrollableAtDepth),
        }),
    );
    emit(&None, &summary)
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let doc = load_gait(&args.gait)?;
    let params = doc.params().map_err(|e| CliError::gait(e.to_string()))?;
    let traj = integrate_gait(&doc.gait, &params, args.steps)?;
    let mut csv = String::from("t,alpha1,alpha2,x,y,theta\n");
    for (t, shape, g) in &traj.samples {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_sig(*t),
            fmt_sig(shape.alpha1),
            fmt_sig(shape.alpha2),
            fmt_sig(g.x),
            fmt_sig(g.y),
            fmt_sig(g.theta)
        ));
    }
    write_file(&args.out, &csv)?;
    let d = net_displacement(&traj);
    let (tf, sf, gf) = traj.samples.last().unwrap();
    let summary = document(
        "simulate",
        json!({
            "gait": args.gait.display().to_string(),
            "steps": args.steps,
            "variant": format!("{:?}", params.variant).to_lowercase(),
            "k": params.k,
            "L": params.l,
            "out": args.out.display().to_string(),
        }),
        json!({
            "final": {
                "t": tf,
                "alpha1": sf.alpha1,
                "alpha2": sf.alpha2,
                "x": gf.x,
                "y": gf.y,
                "theta": gf.theta,
            },
            "net_displacement": { "x": d.x, "y": d.y, "theta": d.theta },
            "integrator": traj.integrator,
        }),
    );
    emit(&None, &summary)
}

fn cmd_appendix_table(args: AppendixArgs) -> Result<(), CliError> {
    let params = SwimmerParams::unit(Variant::Basic);
    let mut points = Vec::new();
    let mut max_delta = 0.0f64;
    for row in REFERENCE_TABLE.iter() {
        let x = ShapePoint::new(row.alpha.0, row.alpha.1);
        let f = filtration(&x, &params, 3)?;
        let h1 = [f.levels[0][0].as_array(), f.levels[0][1].as_array()];
        let h2 = f.levels[1][0].as_array();
        let h3 = [f.levels[2][0].as_array(), f.levels[2][1].as_array()];
        let span = f.strong_rank();
        let d_h1 = [
            normalized_delta(h1[0], row.h1[0]),
            normalized_delta(h1[1], row.h1[1]),
        ];
        let d_h2 = normalized_delta(h2, row.h2);
        let d_h3 = set_match_deltas(h3, row.h3);
        for d in d_h1.iter().chain([&d_h2]).chain(d_h3.iter()) {
            max_delta = max_delta.max(*d);
        }
        points.push(json!({
            "alpha1": row.alpha.0,
            "alpha2": row.alpha.1,
            "computed": {
                "h1": [h1[0], h1[1]],
                "h2": h2,
                "h3": [h3[0], h3[1]],
                "span_h2_h3": span,
            },
            "printed": {
                "h1": [row.h1[0], row.h1[1]],
                "h2": row.h2,
                "h3": [row.h3[0], row.h3[1]],
                "span_h2_h3": row.span_h2_h3,
            },
            "delta_after_sign_normalization": {
                "h1": d_h1,
                "h2": d_h2,
                "h3": d_h3,
                "span_matches": span == row.span_h2_h3,
            },
        }));
    }
    let inputs = json!({ "variant": "basic", "k": 1.0, "L": 1.0, "depth": 3 });
    let content = match args.format {
        Format::Json => document(
            "appendix-table",
            inputs,
            json!({ "points": points, "max_delta": max_delta }),
        ),
        Format::Csv => {
            let mut s = String::from(
                "alpha1,alpha2,term,index,computed_x,computed_y,computed_theta,printed_x,printed_y,printed_theta,delta\n",
            );
            for (row, pt) in REFERENCE_TABLE.iter().zip(points.iter()) {
                let c = &pt["computed"];
                let d = &pt["delta_after_sign_normalization"];
                let mut push = |term: &str, idx: usize, got: &serde_json::Value, want: [f64; 3], delta: f64| {
                    s.push_str(&format!(
                        "{},{},{},{},{},{},{},{},{},{},{}\n",
                        fmt_sig(row.alpha.0),
                        fmt_sig(row.alpha.1),
                        term,
                        idx,
                        fmt_sig(got[0].as_f64().unwrap()),
                        fmt_sig(got[1].as_f64().unwrap()),
                        fmt_sig(got[2].as_f64().unwrap()),
                        fmt_sig(want[0]),
                        fmt_sig(want[1]),
                        fmt_sig(want[2]),
                        fmt_sig(delta)
                    ));
                };
                for i in 0..2 {
                    push("h1", i, &c["h1"][i], row.h1[i], d["h1"][i].as_f64().unwrap());
                }
                push("h2", 0, &c["h2"], row.h2, d["h2"].as_f64().unwrap());
                for i in 0..2 {
                    push("h3", i, &c["h3"][i], row.h3[i], d["h3"][i].as_f64().unwrap());
                }
                s.push_str(&format!(
                    "{},{},span,0,{},,,{},,,{}\n",
                    fmt_sig(row.alpha.0),
                    fmt_sig(row.alpha.1),
                    c["span_h2_h3"],
                    row.span_h2_h3,
                    if c["span_h2_h3"] == row.span_h2_h3 { 0 } else { 1 }
                ));
            }
            s
        }
    };
    emit(&args.out, &content)
}

fn cmd_holonomy(args: HolonomyArgs) -> Result<(), CliError> {
    let doc = load_gait(&args.gait)?;
    if doc.variant != Variant::Symmetric {
        return Err(CliError::variant(
            "holonomy oracle is defined for the symmetric variant only (Abelian structure group)",
        ));
    }
    if (doc.l - 1.0).abs() > 1e-12 {
        return Err(CliError::variant(
            "holonomy oracle uses the closed-form curvature at L = 1; set L to 1",
        ));
    }
    let params = doc.params().map_err(|e| CliError::gait(e.to_string()))?;
    let integral = holonomy_area_integral(&doc.gait, args.resolution)?;
    let traj = integrate_gait(&doc.gait, &params, args.steps)?;
    let d = net_displacement(&traj);
    let denom = d.x.abs().max(integral.abs());
    let deviation = if denom == 0.0 {
        0.0
    } else {
        (d.x - integral).abs() / denom
    };
    let content = document(
        "holonomy",
        json!({
            "gait": args.gait.display().to_string(),
            "resolution": args.resolution,
            "steps": args.steps,
        }),
        json!({
            "area_integral": integral,
            "net_displacement": { "x": d.x, "y": d.y, "theta": d.theta },
            "relative_deviation": deviation,
            "sign_relation": "net x-displacement = +area integral (counterclockwise positive)",
        }),
    );
    emit(&args.out, &content)
}
