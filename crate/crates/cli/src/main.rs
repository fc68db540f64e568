mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use minusord::gen::{self, PairKind, PairSpec};
use minusord::orders::{self, OrderKind, OrderReport};
use minusord::{geninv, linalg, lsq, mtx, sum_inverses, Error, Matrix, ToleranceConfig};
use serde_json::{json, Value};

use report::Input;

#[derive(Parser)]
#[command(name = "minusord", version, about = "Matrix partial orders, inverses of sums and decoupled least squares")]
struct Cli {
    /// Relative singular-value cutoff for rank decisions.
    #[arg(long, global = true, env = "MINUSORD_TOL_RANK")]
    tol_rank: Option<f64>,
    /// Absolute cutoff for scaled formula residuals.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_residual: f64,
    /// Margin below one for minimal-angle tests.
    #[arg(long, global = true, default_value_t = 1e-12)]
    angle_gap: f64,
    /// Print a JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for instance generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether A is below B in the named order.
    Check {
        order: OrderKind,
        a: PathBuf,
        b: PathBuf,
    },
    /// Pseudoinverse of A + B from the optimal split of A and B.
    PinvSum {
        a: PathBuf,
        b: PathBuf,
        /// Write the result to this Matrix Market file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Least squares for A + B, jointly and as a weighted pair.
    Lsq { a: PathBuf, b: PathBuf, c: PathBuf },
    /// Write a random pair A, B with A below A + B into a directory.
    Gen {
        kind: PairKind,
        /// Shape as ROWSxCOLS.
        #[arg(long, value_parser = parse_dims)]
        dims: (usize, usize),
        /// Ranks of A and B as R1,R2.
        #[arg(long, value_parser = parse_ranks)]
        ranks: (usize, usize),
        /// Output directory; receives A.mtx, B.mtx and ApB.mtx.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let (m, n) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected ROWSxCOLS, got '{s}'"))?;
    let m = m.trim().parse().map_err(|_| format!("bad row count '{m}'"))?;
    let n = n.trim().parse().map_err(|_| format!("bad column count '{n}'"))?;
    Ok((m, n))
}

fn parse_ranks(s: &str) -> Result<(usize, usize), String> {
    let (r1, r2) = s
        .split_once(',')
        .ok_or_else(|| format!("expected R1,R2, got '{s}'"))?;
    let r1 = r1.trim().parse().map_err(|_| format!("bad rank '{r1}'"))?;
    let r2 = r2.trim().parse().map_err(|_| format!("bad rank '{r2}'"))?;
    Ok((r1, r2))
}

/// What a command found, before rendering.
struct Outcome {
    holds: bool,
    report: Value,
    text: String,
}

struct Loaded {
    path: String,
    matrix: Matrix,
}

fn load(path: &Path) -> Result<Loaded, Error> {
    Ok(Loaded {
        path: path.display().to_string(),
        matrix: mtx::read(path)?,
    })
}

fn input<'a>(name: &'a str, l: &'a Loaded) -> Input<'a> {
    Input {
        name,
        path: &l.path,
        shape: l.matrix.shape(),
    }
}

fn boundary_flags(reports: &[&OrderReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| r.boundary)
        .map(|r| format!("{}: a rank or angle decision is within a factor of ten of its cutoff", r.order))
        .collect()
}

fn order_text(r: &OrderReport) -> String {
    let mut s = format!(
        "{} order: {}\n  ranks: A {}, B {}, B-A {}\n",
        r.order,
        if r.holds { "holds" } else { "fails" },
        r.rank_data.rank_a,
        r.rank_data.rank_b,
        r.rank_data.rank_b_minus_a
    );
    for (k, v) in &r.verdicts {
        s.push_str(&format!("  {k}: {v}\n"));
    }
    if r.boundary {
        s.push_str("  warning: decision near tolerance\n");
    }
    s
}

fn cmd_check(tol: &ToleranceConfig, order: OrderKind, pa: &Path, pb: &Path) -> Result<Outcome, Error> {
    let (a, b) = (load(pa)?, load(pb)?);
    let r = orders::check(order, &a.matrix, &b.matrix, tol)?;
    let report = report::envelope(
        "check",
        &[input("A", &a), input("B", &b)],
        tol,
        report::order_report(&r),
        boundary_flags(&[&r]),
    );
    Ok(Outcome {
        holds: r.holds,
        report,
        text: order_text(&r),
    })
}

fn require_left_minus(
    command: &str,
    inputs: &[Input<'_>],
    a: &Matrix,
    b: &Matrix,
    tol: &ToleranceConfig,
) -> Result<Result<OrderReport, Outcome>, Error> {
    linalg::ensure_same_shape(a, b)?;
    let r = orders::left_minus_order(a, &(a + b), tol)?;
    if r.holds {
        return Ok(Ok(r));
    }
    let report = report::envelope(command, inputs, tol, json!({ "order": report::order_report(&r) }), boundary_flags(&[&r]));
    Ok(Err(Outcome {
        holds: false,
        report,
        text: format!("A is not below A + B in the left-minus order\n{}", order_text(&r)),
    }))
}

fn cmd_pinv_sum(tol: &ToleranceConfig, pa: &Path, pb: &Path, out: Option<&Path>) -> Result<Outcome, Error> {
    let (a, b) = (load(pa)?, load(pb)?);
    let inputs = [input("A", &a), input("B", &b)];
    let r = match require_left_minus("pinv-sum", &inputs, &a.matrix, &b.matrix, tol)? {
        Ok(r) => r,
        Err(outcome) => return Ok(outcome),
    };
    let x = sum_inverses::fill_fishkind_pinv(&a.matrix, &b.matrix, tol)?;
    let direct = geninv::pinv(&(&a.matrix + &b.matrix), tol)?;
    let residual = linalg::distance(&x, &direct);
    if let Some(path) = out {
        mtx::write(path, &x)?;
    }
    let result = json!({
        "order": report::order_report(&r),
        "pinv": report::matrix(&x),
        "residual": residual,
        "written_to": out.map(|p| p.display().to_string()),
    });
    let mut text = format!("pinv(A+B) from the split: residual against direct pinv {residual:.3e}\n");
    match out {
        Some(p) => text.push_str(&format!("written to {}\n", p.display())),
        None => text.push_str(&mtx::format(&x)),
    }
    Ok(Outcome {
        holds: true,
        report: report::envelope("pinv-sum", &inputs, tol, result, boundary_flags(&[&r])),
        text,
    })
}

fn cmd_lsq(tol: &ToleranceConfig, pa: &Path, pb: &Path, pc: &Path) -> Result<Outcome, Error> {
    let (a, b, c) = (load(pa)?, load(pb)?, load(pc)?);
    if c.matrix.ncols() != 1 {
        return Err(Error::ShapeMismatch {
            left: (a.matrix.nrows(), 1),
            right: c.matrix.shape(),
        });
    }
    let inputs = [input("A", &a), input("B", &b), input("c", &c)];
    let r = match require_left_minus("lsq", &inputs, &a.matrix, &b.matrix, tol)? {
        Ok(r) => r,
        Err(outcome) => return Ok(outcome),
    };
    let rhs = c.matrix.column(0).into_owned();
    let sol = lsq::decoupled_lss(&a.matrix, &b.matrix, &rhs, tol)?;
    let res = &sol.residuals;
    let result = json!({
        "order": report::order_report(&r),
        "x_joint": report::vector(&sol.x_joint),
        "x_system": report::vector(&sol.x_system),
        "weight": report::matrix(&sol.weight.matrix),
        "residuals": {
            "joint_normal_at_joint": res.joint_normal_at_joint,
            "weighted_a_at_joint": res.weighted_a_at_joint,
            "weighted_b_at_joint": res.weighted_b_at_joint,
            "weighted_a_at_system": res.weighted_a_at_system,
            "weighted_b_at_system": res.weighted_b_at_system,
            "joint_normal_at_system": res.joint_normal_at_system,
            "scale": res.scale,
            "max": res.max(),
        },
    });
    let mut text = String::from("x_joint:\n");
    for z in sol.x_joint.iter() {
        text.push_str(&format!("  {:.16e} {:.16e}\n", z.re, z.im));
    }
    text.push_str("x_system:\n");
    for z in sol.x_system.iter() {
        text.push_str(&format!("  {:.16e} {:.16e}\n", z.re, z.im));
    }
    text.push_str(&format!("largest cross residual: {:.3e}\n", res.max()));
    Ok(Outcome {
        holds: true,
        report: report::envelope("lsq", &inputs, tol, result, boundary_flags(&[&r])),
        text,
    })
}

fn cmd_gen(
    tol: &ToleranceConfig,
    kind: PairKind,
    dims: (usize, usize),
    ranks: (usize, usize),
    seed: u64,
    out: &Path,
) -> Result<Outcome, Error> {
    let spec = PairSpec {
        kind,
        rows: dims.0,
        cols: dims.1,
        rank_a: ranks.0,
        rank_b: ranks.1,
    };
    let pair = gen::generate(&spec, seed)?;
    fs::create_dir_all(out)?;
    let files = [("A", pair.a.clone()), ("B", pair.b.clone()), ("ApB", pair.sum())];
    let mut written = Vec::new();
    for (name, m) in &files {
        let path = out.join(format!("{name}.mtx"));
        mtx::write(&path, m)?;
        written.push(path.display().to_string());
    }
    let result = json!({
        "kind": kind.name(),
        "rows": dims.0,
        "cols": dims.1,
        "rank_a": ranks.0,
        "rank_b": ranks.1,
        "seed": seed,
        "files": written,
    });
    Ok(Outcome {
        holds: true,
        report: report::envelope("gen", &[], tol, result, Vec::new()),
        text: written.join("\n") + "\n",
    })
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let tol = ToleranceConfig::new(cli.tol_rank, cli.tol_residual, cli.angle_gap)?;
    match &cli.command {
        Command::Check { order, a, b } => cmd_check(&tol, *order, a, b),
        Command::PinvSum { a, b, out } => cmd_pinv_sum(&tol, a, b, out.as_deref()),
        Command::Lsq { a, b, c } => cmd_lsq(&tol, a, b, c),
        Command::Gen { kind, dims, ranks, out } => cmd_gen(&tol, *kind, *dims, *ranks, cli.seed, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(outcome) => {
            if json {
                print!("{}", report::render(&outcome.report));
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(if outcome.holds { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("minusord: {e}");
            ExitCode::from(2)
        }
    }
}
