//! Command-line surface: generate patches, apply and verify labellings,
//! print statistics, run the certificates, solve periodic and finite
//! instances, and render SVG.
//!
//! Exit codes: 0 success, 1 verification or certification failure,
//! 2 usage or input errors.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use tiling123::certify;
use tiling123::fixtures;
use tiling123::patch::Patch;
use tiling123::patchio;
use tiling123::periodic::{self, PeriodicGraphSpec};
use tiling123::render::{render_svg, RenderStyle};
use tiling123::rules::{apply_rule, RuleId};
use tiling123::solver::{brute_force_enumerate, solve, FiniteGraph, Solve};
use tiling123::tilings::chair::VertexPlacement;

#[derive(Parser)]
#[command(
    name = "tiling123",
    version,
    about = "1-2-3 edge labellings of polygonal tilings"
)]
struct Cli {
    /// Rotate generated seeds counter-clockwise by this many degrees.
    #[arg(long, global = true, default_value_t = 0.0)]
    seed_orientation: f64,
    /// Override the vertex snap tolerance (edge units).
    #[arg(long, global = true)]
    tolerance_override: Option<f64>,
    /// Report format for verification and certification output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build a patch of a tiling and write it as JSON.
    Generate {
        #[arg(long)]
        tiling: String,
        /// Substitution level (substitution tilings) or grid size (periodic).
        #[arg(long, default_value_t = 3)]
        level: usize,
        /// Chair vertex placement: 1, 2 or 3.
        #[arg(long, default_value_t = 2)]
        vp: u8,
        #[arg(long)]
        out: PathBuf,
    },
    /// Apply a labelling rule and write the weighted patch.
    Label {
        #[arg(long)]
        patch: String,
        #[arg(long)]
        rule: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify the vertex-colouring property on closed vertices.
    Verify {
        #[arg(long)]
        patch: String,
        #[arg(long)]
        rule: Option<String>,
    },
    /// Weighted-degree histogram over closed vertices.
    Stats {
        #[arg(long)]
        patch: String,
        #[arg(long)]
        rule: Option<String>,
    },
    /// Re-derive the local proof behind a rule.
    Certify {
        #[arg(long)]
        rule: String,
    },
    /// Run the constructive periodic pipeline on a graph spec.
    SolvePeriodic {
        /// Built-in name (square, triangle, honeycomb) or a JSON spec file.
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 6)]
        window: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// 1-2-3 solve a finite graph given as JSON {vertex_count, edges}.
    SolveFinite {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: u8,
        /// Also count all valid labellings by brute force (at most 16 edges).
        #[arg(long, default_value_t = false)]
        enumerate: bool,
    },
    /// Render a patch (optionally labelled) to SVG.
    Render {
        #[arg(long)]
        patch: String,
        #[arg(long)]
        rule: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !cli.seed_orientation.is_finite() {
        eprintln!("seed orientation must be a finite angle");
        return ExitCode::from(2);
    }
    if let Some(tol) = cli.tolerance_override {
        if tol <= 0.0 || tol >= tiling123::geometry::MIN_SEP {
            eprintln!(
                "tolerance override must be in (0, {})",
                tiling123::geometry::MIN_SEP
            );
            return ExitCode::from(2);
        }
        tiling123::geometry::set_snap_tol(tol);
    }
    match run(&cli) {
        Ok(clean) => {
            if clean {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse_rule(name: &str) -> Result<RuleId, tiling123::Error> {
    RuleId::parse(name).ok_or_else(|| tiling123::Error::Invalid(format!("unknown rule `{name}`")))
}

/// A patch argument names either a fixture or a patch JSON file.
fn load_patch_arg(arg: &str) -> Result<(Patch, Option<RuleId>), tiling123::Error> {
    if let Ok(fx) = fixtures::load_fixture(arg) {
        let rule = fx.rule().ok();
        return Ok((fx.to_patch()?, rule));
    }
    let text = std::fs::read_to_string(arg)?;
    let (patch, _) = patchio::load_patch(&text)?;
    Ok((patch, None))
}

fn generate(tiling: &str, level: usize, vp: u8) -> Result<Patch, tiling123::Error> {
    use tiling123::tilings::*;
    match tiling {
        "square" => grids::square_patch(level),
        "triangle" => grids::triangle_patch(level),
        "hexagon" => grids::hexagon_patch(level),
        "chair" => chair::patch(
            level,
            match vp {
                1 => VertexPlacement::Vp1,
                3 => VertexPlacement::Vp3,
                _ => VertexPlacement::Vp2,
            },
        ),
        "half-hex" => halfhex::patch(level),
        "domino-variant" => domino::patch(level),
        "penrose" => penrose::patch(level),
        "ab-rhomb-triangle" => ammann::rhomb_triangle_patch(level),
        "ab-rhomb-square" => ammann::rhomb_square_patch(level),
        "non-pinwheel" => {
            let inf = inflate(
                &pinwheel::NON_PINWHEEL_RULE,
                &pinwheel::triangle().placed(),
                level,
            )?;
            Ok(Patch::new("non-pinwheel", inf.tiles))
        }
        other => Err(tiling123::Error::Invalid(format!(
            "unknown tiling `{other}`"
        ))),
    }
}

fn rotate_patch(patch: &mut Patch, deg: f64) {
    if deg == 0.0 {
        return;
    }
    let iso = tiling123::geometry::Isometry::rotation_deg(deg);
    for t in patch.tiles.iter_mut() {
        for p in t.corners.iter_mut() {
            *p = iso.apply(*p);
        }
    }
    for s in patch.supertiles.iter_mut() {
        s.iso = iso.compose(&s.iso);
    }
    for m in patch.marks.iter_mut() {
        m.a = iso.apply(m.a);
        m.b = iso.apply(m.b);
    }
}

fn run(cli: &Cli) -> Result<bool, tiling123::Error> {
    match &cli.command {
        Command::Generate {
            tiling,
            level,
            vp,
            out,
        } => {
            let mut patch = generate(tiling, *level, *vp)?;
            rotate_patch(&mut patch, cli.seed_orientation);
            let text = patchio::save_patch(&patch, None)?;
            std::fs::write(out, text)?;
            println!("wrote {} with {} tiles", out.display(), patch.tiles.len());
            Ok(true)
        }
        Command::Label { patch, rule, out } => {
            let (p, _) = load_patch_arg(patch)?;
            let rule = parse_rule(rule)?;
            let labelled = apply_rule(rule, &p)?;
            let text = patchio::save_patch(&p, Some(&labelled))?;
            std::fs::write(out, text)?;
            println!(
                "wrote {} ({} edges labelled)",
                out.display(),
                labelled.labelling.weights.len()
            );
            Ok(true)
        }
        Command::Verify { patch, rule } => {
            let (p, fixture_rule) = load_patch_arg(patch)?;
            let rule = match rule {
                Some(r) => parse_rule(r)?,
                None => fixture_rule.ok_or_else(|| {
                    tiling123::Error::Invalid("no rule given and none implied by the patch".into())
                })?,
            };
            let labelled = apply_rule(rule, &p)?;
            let report = labelled.verify()?;
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                Format::Text => {
                    println!(
                        "{}: {} closed vertices, {} edges checked, {} conflicts",
                        rule.as_str(),
                        report.closed_vertices,
                        report.checked_edges,
                        report.conflicts.len()
                    );
                    for c in report.conflicts.iter().take(10) {
                        println!(
                            "  conflict: sum {} at ({:.3}, {:.3}) - ({:.3}, {:.3})",
                            c.sum, c.a_pos.x, c.a_pos.y, c.b_pos.x, c.b_pos.y
                        );
                    }
                }
            }
            Ok(report.is_clean())
        }
        Command::Stats { patch, rule } => {
            let (p, fixture_rule) = load_patch_arg(patch)?;
            let rule = match rule {
                Some(r) => parse_rule(r)?,
                None => fixture_rule.ok_or_else(|| {
                    tiling123::Error::Invalid("no rule given and none implied by the patch".into())
                })?,
            };
            let labelled = apply_rule(rule, &p)?;
            match &labelled.contracted {
                None => {
                    let hist =
                        tiling123::patch::sum_histogram(&labelled.graph, &labelled.labelling)?;
                    match cli.format {
                        Format::Json => println!("{}", serde_json::to_string_pretty(&hist)?),
                        Format::Text => {
                            for (sum, freq) in hist {
                                println!("{sum}: {freq:.6}");
                            }
                        }
                    }
                }
                Some(cg) => {
                    let sums = tiling123::patch::closed_sums_contracted(
                        &labelled.graph,
                        cg,
                        &labelled.labelling,
                    );
                    println!("closed sums: {sums:?}");
                }
            }
            Ok(true)
        }
        Command::Certify { rule } => {
            let rule_id = parse_rule(rule)?;
            let report = match rule_id {
                RuleId::ChairVp1Const => certify::certify_degree_separation("chair")?,
                RuleId::PenroseArrows | RuleId::AbRhombSquareCorner => {
                    certify::certify_vertex_config_rule(rule_id)?
                }
                RuleId::NonpinwheelRect
                | RuleId::PinwheelRectKite
                | RuleId::Halfhex8
                | RuleId::DominoVariant
                | RuleId::AbRhombTriangleLength
                | RuleId::ChairVp3Supertile => certify::certify_supertile_rule(rule_id)?,
                other => {
                    return Err(tiling123::Error::Invalid(format!(
                        "no certificate defined for rule `{}`",
                        other.as_str()
                    )))
                }
            };
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                Format::Text => print!("{}", report.summary()),
            }
            Ok(report.success())
        }
        Command::SolvePeriodic { spec, window, out } => {
            let spec = match PeriodicGraphSpec::builtin(spec) {
                Some(s) => s,
                None => {
                    let text = std::fs::read_to_string(spec)?;
                    serde_json::from_str(&text)?
                }
            };
            let solution = periodic::solve_periodic(&spec)?;
            let (norm, _) = periodic::normalize_basis(&spec)?;
            let fg = periodic::build_factor_graph(&norm, solution.n)?;
            let report = periodic::verify_periodic(
                &spec,
                &solution.labelling,
                *window,
                Some(&fg),
                Some(&solution.factor_sums),
            )?;
            println!(
                "{}: N = {}, factor graph {} vertices / {} edges, window {}x{}: {} conflicts, {} lift mismatches",
                spec.name,
                solution.n,
                fg.graph.vertex_count,
                fg.graph.edges.len(),
                window,
                window,
                report.conflicts.len(),
                report.lift_mismatches.len()
            );
            if let Some(path) = out {
                std::fs::write(path, serde_json::to_string_pretty(&solution.labelling)?)?;
                println!("wrote {}", path.display());
            }
            Ok(report.is_clean() && report.lift_mismatches.is_empty())
        }
        Command::SolveFinite {
            graph,
            k,
            enumerate,
        } => {
            let text = std::fs::read_to_string(graph)?;
            let g: FiniteGraph = serde_json::from_str(&text)?;
            let g = FiniteGraph::new(g.vertex_count, g.edges)?;
            match solve(&g, *k) {
                Solve::Sat(weights) => {
                    println!("sat: {weights:?}");
                }
                Solve::Unsat => println!("unsat"),
            }
            if *enumerate {
                let count = brute_force_enumerate(&g, *k, None)?;
                println!("valid labellings: {count}");
            }
            Ok(true)
        }
        Command::Render { patch, rule, out } => {
            let (p, fixture_rule) = load_patch_arg(patch)?;
            let rule = rule
                .as_deref()
                .map(parse_rule)
                .transpose()?
                .or(fixture_rule);
            let labelled = rule.map(|r| apply_rule(r, &p)).transpose()?;
            let graph = match &labelled {
                Some(l) => l.graph.clone(),
                None => tiling123::patch::PatchGraph::build(&p.tiles)?,
            };
            let svg = render_svg(&graph, labelled.as_ref(), Some(&p), &RenderStyle::default())?;
            std::fs::write(out, svg)?;
            println!("wrote {}", out.display());
            Ok(true)
        }
    }
}
