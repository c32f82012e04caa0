//! Command-line front end: argument parsing, config injection and the
//! subcommand handlers. `run_with` is the whole program minus process exit.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use lagrange_spheres::exact::{sample::random_pair, BoundaryField, Biquad, KElement};
use lagrange_spheres::geometry::{map_to_sphere, unmap_with, verify_phi_conditions, SpaceCase, SpherePoint};
use lagrange_spheres::horospheres::{
    figure_graph, figure_points, horoball_at, horoball_on_sphere, tangency_graph_with_summary, GraphFormat, Horoball,
};
use lagrange_spheres::spectra::{
    best_approximations, cited_constants, discrete_spectrum, estimate_lagrange, generated_family, markoff_tree,
    spectrum_csv, to_significant, transfer_identity_check, x_values, y_values, Interval, Space, TargetNumber,
};
use lagrange_spheres::Error;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "lagrange-spheres", version, about = "Exact maps, horoballs and Lagrange spectra of rational circles and spheres")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (0 = all cores); output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// key=value file; keys are long flag names, command-line flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug)]
enum CaseSel {
    All,
    One(SpaceCase),
}

impl FromStr for CaseSel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        if s.eq_ignore_ascii_case("all") {
            Ok(CaseSel::All)
        } else {
            s.parse().map(CaseSel::One)
        }
    }
}

impl CaseSel {
    fn cases(self) -> Vec<SpaceCase> {
        match self {
            CaseSel::All => SpaceCase::ALL.to_vec(),
            CaseSel::One(c) => vec![c],
        }
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Φ(z) for boundary elements z.
    Map {
        #[arg(long)]
        case: SpaceCase,
        #[arg(required = true, allow_hyphen_values = true)]
        z: Vec<String>,
    },
    /// Φ⁻¹(P) for sphere points written (p1,...,pk)/q.
    Unmap {
        #[arg(long)]
        case: SpaceCase,
        #[arg(required = true, allow_hyphen_values = true)]
        point: Vec<String>,
    },
    /// H_K(z), and H(Φ(z)) when a case is given.
    Height {
        #[arg(long, conflicts_with = "field")]
        case: Option<SpaceCase>,
        #[arg(long)]
        field: Option<BoundaryField>,
        #[arg(required = true, allow_hyphen_values = true)]
        z: Vec<String>,
    },
    /// Checks (Φ-i), (Φ-ii) and the transfer identity on seeded random pairs.
    VerifyPhi {
        #[arg(long, default_value = "all")]
        case: CaseSel,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1000)]
        max_height: u64,
    },
    /// The horoball at Φ(z) or at a sphere point.
    Horoball {
        #[arg(long)]
        case: SpaceCase,
        #[arg(allow_hyphen_values = true, required_unless_present = "point")]
        z: Option<String>,
        #[arg(long, conflicts_with = "z")]
        point: Option<String>,
    },
    /// Tangency graph of horoballs up to a height, or of a figure's points.
    Graph {
        #[arg(long)]
        case: SpaceCase,
        #[arg(long, required_unless_present = "figure")]
        bound: Option<u64>,
        #[arg(long, conflicts_with = "bound")]
        figure: bool,
        #[arg(long, default_value = "dot")]
        format: GraphFormat,
    },
    /// Solutions of 2x² + y1² + y2² = 4xy1y2 with all components ≤ bound.
    Markoff {
        #[arg(long)]
        bound: u64,
        #[arg(long, conflicts_with = "ys")]
        xs: bool,
        #[arg(long)]
        ys: bool,
    },
    /// Initial discrete spectrum as CSV, or the cited constants.
    Spectrum {
        #[arg(long)]
        case: SpaceCase,
        #[arg(long, default_value_t = 30)]
        bound: u64,
        #[arg(long)]
        cited: bool,
    },
    /// Finite-height estimate of a Lagrange number.
    EstimateLagrange {
        #[arg(long, default_value = "golden", allow_hyphen_values = true)]
        target: TargetNumber,
        #[arg(long)]
        space: Space,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        trace: bool,
    },
    /// Points, radii and tangencies of the horosphere figures.
    Figures {
        #[arg(long, default_value = "all")]
        case: CaseSel,
    },
}

enum Failure {
    Usage(String),
    Invariant(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_invariant() {
            Failure::Invariant(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// Adds `--key value` for each config entry whose flag is not already given.
fn inject_config(argv: &[String]) -> Res<Vec<String>> {
    let mut path = None;
    for (i, a) in argv.iter().enumerate() {
        if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else if a == "--config" {
            path = argv.get(i + 1).cloned();
        }
    }
    let Some(path) = path else { return Ok(argv.to_vec()) };
    let text = std::fs::read_to_string(&path).map_err(|e| Failure::Usage(format!("config {path}: {e}")))?;
    let mut out = argv.to_vec();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("config {path}:{}: expected key=value", n + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if k == "config" {
            return Err(Failure::Usage("config files cannot load other config files".into()));
        }
        let flag = format!("--{k}");
        if argv.iter().any(|a| a == &flag || a.starts_with(&format!("{flag}="))) {
            continue;
        }
        match v {
            "true" => out.push(flag),
            "false" => {}
            _ => out.push(format!("{flag}={v}")),
        }
    }
    Ok(out)
}

fn dec(b: &Biquad) -> String {
    format!("{:.15}", b.to_f64())
}

fn biquad_json(b: &Biquad) -> Value {
    json!({"exact": b.to_string(), "approx": dec(b)})
}

fn interval_json(x: &Interval) -> Value {
    json!({"lo": to_significant(x.lo(), 20), "hi": to_significant(x.hi(), 20)})
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn cmd_map(case: SpaceCase, zs: &[String], js: bool) -> Res<String> {
    let mut rows = Vec::new();
    let mut s = String::new();
    for t in zs {
        let z = KElement::parse(case.field(), t)?;
        let p = map_to_sphere(&z, case)?;
        writeln!(s, "{p} height={}", p.q()).unwrap();
        rows.push(json!({"case": case.name(), "z": z.to_string(), "point": p.to_json()}));
    }
    Ok(if js { pretty(&Value::Array(rows)) } else { s })
}

fn cmd_unmap(case: SpaceCase, ps: &[String], js: bool) -> Res<String> {
    let mut rows = Vec::new();
    let mut s = String::new();
    for t in ps {
        let p = SpherePoint::parse(case, t)?;
        let z = unmap_with(&p, true)?;
        let hk = if z.is_infinite() { "inf".to_string() } else { z.height()?.to_string() };
        writeln!(s, "{z} height_K={hk}").unwrap();
        rows.push(json!({"case": case.name(), "point": p.to_json(), "z": z.to_string(), "height_k": hk}));
    }
    Ok(if js { pretty(&Value::Array(rows)) } else { s })
}

fn cmd_height(case: Option<SpaceCase>, field: Option<BoundaryField>, zs: &[String], js: bool) -> Res<String> {
    let field = match (case, field) {
        (Some(c), _) => c.field(),
        (None, Some(f)) => f,
        (None, None) => return Err(Failure::Usage("height needs --case or --field".into())),
    };
    let mut rows = Vec::new();
    let mut s = String::new();
    for t in zs {
        let z = KElement::parse(field, t)?;
        let hk = z.height()?;
        let hs = case.map(|c| map_to_sphere(&z, c)).transpose()?.map(|p| p.q().clone());
        match &hs {
            Some(h) => writeln!(s, "{z} height_K={hk} height={h}").unwrap(),
            None => writeln!(s, "{z} height_K={hk}").unwrap(),
        }
        rows.push(json!({"z": z.to_string(), "field": field.name(), "height_k": hk.to_string(),
            "height": hs.map(|h| h.to_string())}));
    }
    Ok(if js { pretty(&Value::Array(rows)) } else { s })
}

fn cmd_verify_phi(sel: CaseSel, samples: usize, max_height: u64, seed: u64, js: bool) -> Res<String> {
    let mut rows = Vec::new();
    let mut s = String::new();
    let mut failures = Vec::new();
    for case in sel.cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((case as u64 + 1) << 32));
        let pairs: Vec<(KElement, KElement)> =
            (0..samples).map(|_| random_pair(case.field(), max_height, &mut rng)).collect();
        let results: Vec<Result<(bool, bool), Error>> = pairs
            .par_iter()
            .map(|(z, w)| {
                let r = verify_phi_conditions(case, z, w)?;
                let t = transfer_identity_check(case, z, w).is_ok();
                Ok((r.phi_i_holds && r.phi_ii_holds, t))
            })
            .collect();
        let (mut phi_bad, mut tr_bad) = (0usize, 0usize);
        for (i, r) in results.iter().enumerate() {
            let (z, w) = &pairs[i];
            match r {
                Ok((true, true)) => {}
                Ok((p, t)) => {
                    phi_bad += usize::from(!p);
                    tr_bad += usize::from(!t);
                    if failures.len() < 5 {
                        let rep = verify_phi_conditions(case, z, w)?;
                        let mut c = format!("{case} z={z} w={w}");
                        for wt in rep.witnesses {
                            write!(c, "\n  {}: {} vs {}", wt.label, wt.lhs, wt.rhs).unwrap();
                        }
                        if let Err(e) = transfer_identity_check(case, z, w) {
                            write!(c, "\n  transfer: {e}").unwrap();
                        }
                        failures.push(c);
                    }
                }
                Err(e) => {
                    phi_bad += 1;
                    failures.push(format!("{case} z={z} w={w}: {e}"));
                }
            }
        }
        let v = |bad: usize| if bad == 0 { "ok".to_string() } else { format!("{bad} FAILED") };
        writeln!(s, "{}: {samples} pairs, phi conditions {}, transfer identity {}", case.name(), v(phi_bad), v(tr_bad)).unwrap();
        rows.push(json!({"case": case.name(), "samples": samples, "max_height": max_height, "seed": seed,
            "phi_failures": phi_bad, "transfer_failures": tr_bad}));
    }
    let text = if js { pretty(&Value::Array(rows)) } else { s };
    if failures.is_empty() {
        Ok(text)
    } else {
        Err(Failure::Invariant(format!("{text}certificate:\n{}", failures.join("\n"))))
    }
}

fn ball_text(b: &Horoball) -> String {
    let centre: Vec<String> = b.center.iter().map(|c| format!("{c} ≈ {}", dec(c))).collect();
    format!("point {} height={}\nradius {} ≈ {}\ncenter ({})\n", b.base, b.base.q(), b.radius, dec(&b.radius), centre.join(", "))
}

fn ball_json(b: &Horoball) -> Value {
    json!({"point": b.base.to_json(), "radius": biquad_json(&b.radius),
        "center": b.center.iter().map(biquad_json).collect::<Vec<_>>()})
}

fn cmd_horoball(case: SpaceCase, z: Option<&str>, point: Option<&str>, js: bool) -> Res<String> {
    let b = match (z, point) {
        (Some(t), _) => horoball_on_sphere(&KElement::parse(case.field(), t)?, case)?,
        (None, Some(p)) => horoball_at(&SpherePoint::parse(case, p)?)?,
        (None, None) => return Err(Failure::Usage("horoball needs z or --point".into())),
    };
    Ok(if js { pretty(&ball_json(&b)) } else { ball_text(&b) })
}

fn cmd_graph(case: SpaceCase, bound: Option<u64>, figure: bool, format: GraphFormat, js: bool, err: &mut String) -> Res<String> {
    let format = if js { GraphFormat::Json } else { format };
    let g = match (figure, bound) {
        (true, _) => figure_graph(case)?,
        (false, Some(b)) => {
            let (g, summary) = tangency_graph_with_summary(case, b)?;
            writeln!(
                err,
                "{}: {} nodes, {} pairs, {} tangent, {} disjoint, {} explicit-center checks",
                case.name(),
                g.nodes.len(),
                summary.pairs,
                summary.tangent,
                summary.disjoint,
                summary.full_checks
            )
            .unwrap();
            g
        }
        (false, None) => return Err(Failure::Usage("graph needs --bound or --figure".into())),
    };
    Ok(g.export(format)?)
}

fn cmd_markoff(bound: u64, xs: bool, ys: bool, js: bool) -> Res<String> {
    if bound == 0 {
        return Err(Failure::Usage("bound must be at least 1".into()));
    }
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ") + "\n";
    Ok(match (xs, ys, js) {
        (true, _, false) => join(&x_values(bound)),
        (_, true, false) => join(&y_values(bound)),
        (true, _, true) => pretty(&json!({"bound": bound, "xs": x_values(bound)})),
        (_, true, true) => pretty(&json!({"bound": bound, "ys": y_values(bound)})),
        (false, false, true) => pretty(&json!({"bound": bound,
            "triples": markoff_tree(bound).iter().map(|t| t.as_array()).collect::<Vec<_>>()})),
        (false, false, false) => {
            markoff_tree(bound).iter().map(|t| format!("{} {} {}\n", t.x, t.y1, t.y2)).collect()
        }
    })
}

fn cmd_spectrum(case: SpaceCase, bound: u64, cited: bool, js: bool, err: &mut String) -> Res<String> {
    if cited {
        let cs = cited_constants(case);
        for c in &cs {
            c.verify()?;
        }
        if js {
            let rows: Vec<Value> = cs
                .iter()
                .map(|c| json!({"case": case.name(), "role": c.role, "printed": c.printed, "radicand": c.radicand.to_string(),
                    "root": c.root, "value_squared": c.square.to_string(), "value_approx": c.decimal(30), "note": c.note}))
                .collect();
            return Ok(pretty(&Value::Array(rows)));
        }
        return Ok(spectrum_csv(&cs.iter().map(|c| c.value()).collect::<Vec<_>>()));
    }
    if let Err(e) = generated_family(case, bound) {
        writeln!(err, "{e}; listing the cited constants").unwrap();
    }
    let vs = discrete_spectrum(case, bound)?;
    if js {
        let rows: Vec<Value> = vs
            .iter()
            .map(|v| json!({"case": case.name(), "value_squared": v.square.to_string(), "value_approx": v.decimal(30),
                "exact_form": v.exact_form(), "generator": v.generator}))
            .collect();
        return Ok(pretty(&Value::Array(rows)));
    }
    Ok(spectrum_csv(&vs))
}

fn cmd_estimate(xi: &TargetNumber, space: Space, bound: u64, trace: bool, js: bool) -> Res<String> {
    let est = estimate_lagrange(xi, space, bound)?;
    let records = if trace { best_approximations(xi, space, bound)? } else { Vec::new() };
    if js {
        let mut v = json!({"target": xi.to_string(), "space": space.to_string(), "bound": bound,
            "tail": [bound / 2, bound], "estimate": interval_json(&est)});
        if trace {
            v["records"] = Value::Array(records.iter().map(|r| r.to_json()).collect());
        }
        return Ok(pretty(&v));
    }
    let mut s = String::new();
    if trace {
        for r in &records {
            let p = r.point.as_ref().map(|p| format!(" {p}")).unwrap_or_default();
            let tie = if r.tie { " tie" } else { "" };
            writeln!(s, "H={} z={}{p} d={} quality={}{tie}", r.height, r.z, r.distance, r.quality).unwrap();
        }
    }
    writeln!(
        s,
        "L({xi}) on {space} ≈ {est} (sup of 1/(H·d) over heights in ({}, {bound}]; finite-height estimate)",
        bound / 2
    )
    .unwrap();
    Ok(s)
}

fn cmd_figures(sel: CaseSel, js: bool) -> Res<String> {
    let mut s = String::new();
    let mut rows = Vec::new();
    for case in sel.cases() {
        let entries = figure_points(case)?;
        let g = figure_graph(case)?;
        writeln!(s, "# {}", case.name()).unwrap();
        let mut ej = Vec::new();
        for e in &entries {
            let b = horoball_at(&e.point)?;
            writeln!(s, "{} -> {} height={} radius={}", e.z, e.point, e.point.q(), b.radius).unwrap();
            ej.push(json!({"z": e.z.to_string(), "point": e.point.to_json(), "radius": biquad_json(&b.radius)}));
        }
        for &(i, j) in &g.edges {
            writeln!(s, "{} -- {}", g.nodes[i], g.nodes[j]).unwrap();
        }
        rows.push(json!({"case": case.name(), "entries": ej,
            "edges": g.edges.iter().map(|&(i, j)| json!([g.nodes[i].to_string(), g.nodes[j].to_string()])).collect::<Vec<_>>()}));
    }
    Ok(if js { pretty(&Value::Array(rows)) } else { s })
}

fn dispatch(cli: &Cli, err: &mut String) -> Res<String> {
    let js = cli.json;
    match &cli.cmd {
        Cmd::Map { case, z } => cmd_map(*case, z, js),
        Cmd::Unmap { case, point } => cmd_unmap(*case, point, js),
        Cmd::Height { case, field, z } => cmd_height(*case, *field, z, js),
        Cmd::VerifyPhi { case, samples, max_height } => cmd_verify_phi(*case, *samples, *max_height, cli.seed, js),
        Cmd::Horoball { case, z, point } => cmd_horoball(*case, z.as_deref(), point.as_deref(), js),
        Cmd::Graph { case, bound, figure, format } => cmd_graph(*case, *bound, *figure, *format, js, err),
        Cmd::Markoff { bound, xs, ys } => cmd_markoff(*bound, *xs, *ys, js),
        Cmd::Spectrum { case, bound, cited } => cmd_spectrum(*case, *bound, *cited, js, err),
        Cmd::EstimateLagrange { target, space, bound, trace } => cmd_estimate(target, *space, *bound, *trace, js),
        Cmd::Figures { case } => cmd_figures(*case, js),
    }
}

fn emit(cli: &Cli, text: &str, out: &mut dyn Write) -> Res<()> {
    let io = |e: std::io::Error| Failure::Io(e.to_string());
    match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(io),
        None => out.write_all(text.as_bytes()).map_err(io),
    }
}

/// Runs the program on `argv` (program name first) and returns the exit
/// status: 0 success, 1 I/O failure, 2 usage error, 3 invariant violation.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = (|| -> Res<()> {
        let args = inject_config(argv)?;
        let cli = match Cli::try_parse_from(&args) {
            Ok(c) => c,
            Err(e) => {
                use clap::error::ErrorKind;
                return match e.kind() {
                    ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                        write!(out, "{e}").map_err(|e| Failure::Io(e.to_string()))
                    }
                    _ => {
                        let m = e.to_string();
                        Err(Failure::Usage(m.trim_start_matches("error: ").trim_end().to_string()))
                    }
                };
            }
        };
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build()
            .map_err(|e| Failure::Io(e.to_string()))?;
        let mut notes = String::new();
        let text = pool.install(|| dispatch(&cli, &mut notes));
        err.write_all(notes.as_bytes()).map_err(|e| Failure::Io(e.to_string()))?;
        emit(&cli, &text?, out)
    })();
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Invariant(m)) => {
            let _ = writeln!(err, "invariant violated: {m}");
            EXIT_INVARIANT
        }
        Err(Failure::Io(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

/// Convenience wrapper collecting stdout and stderr.
pub fn run(argv: &[&str]) -> (i32, String, String) {
    let args: Vec<String> = argv.iter().map(|s| s.to_string()).collect();
    let (mut o, mut e) = (Vec::new(), Vec::new());
    let code = run_with(&args, &mut o, &mut e);
    (code, String::from_utf8_lossy(&o).into_owned(), String::from_utf8_lossy(&e).into_owned())
}
