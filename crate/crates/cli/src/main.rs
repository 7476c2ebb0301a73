//! Command-line frontend for the Witt vector library.
//!
//! Exit codes: 0 success, 1 usage error, 2 capability gap (missing oracle,
//! budget, membership failure), 3 verification failure, 4 internal
//! invariant breach.

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use witt_core::conditions::{condition_matrix, Budget, CheckContext};
use witt_core::error::WittError;
use witt_core::fixtures;
use witt_core::image::{solve_frobenius, SolverOracles};
use witt_core::kernel::kernel_element;
use witt_core::ring::{parse_element, parse_ring_spec, Ring};
use witt_core::universal::{family, FamilyKind, PolyJson};
use witt_core::wittvec::{WittJson, WittVector};

const RING_GRAMMAR: &str = "Ring specs:
  Z                 the integers
  Z/<m>             integers mod m (m >= 2)
  GF(<q>)           the prime field (q prime)
  Z[T]              polynomials over Z
  GF(<q>)[T]        polynomials over GF(q)
  Z[T]/(<poly>)     quotient by a monic polynomial, e.g. Z[T]/(T^2+1)
  GF(<q>)[T]/(<poly>)
  Zeta(<p>,<n>)     Z[mu] for mu a primitive p^n-th root of unity
  ZetaTower(<p>)    the union of all Zeta(p,n)

Element literals: decimal integers; polynomials like 2*T^3-T+4;
cyclotomic coefficient vectors [c0,c1,...]@<level> in the basis mu^j.";

#[derive(Parser)]
#[command(
    name = "witt",
    about = "Exact arithmetic in truncated Witt rings: universal polynomials, \
             Frobenius kernels and preimages, and surjectivity-condition reports",
    after_help = RING_GRAMMAR,
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a universal polynomial family member over Z.
    Poly(PolyArgs),
    /// Witt vector arithmetic over a chosen ring.
    Witt(WittArgs),
    /// Construct a kernel-of-Frobenius element from its first component.
    Kernel(KernelArgs),
    /// Solve F(x) = y for a target Witt vector.
    Preimage(PreimageArgs),
    /// Report the surjectivity-condition matrix for a ring.
    Conditions(ConditionsArgs),
    /// Run the regression fixtures.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct PolyArgs {
    #[arg(long)]
    p: u64,
    /// Family level (slot index).
    #[arg(long)]
    level: u32,
    /// One of: sum, product, neg, frobenius, f.
    #[arg(long)]
    which: String,
    #[arg(long, default_value = "text")]
    format: String,
    /// Raise the per-prime level cap.
    #[arg(long)]
    max_level: Option<u32>,
}

#[derive(Args)]
struct WittArgs {
    #[arg(long)]
    ring: String,
    #[arg(long)]
    p: u64,
    /// One of: add, mul, neg, frobenius, verschiebung, ghost, teichmuller,
    /// restrict, decompose.
    #[arg(long)]
    op: String,
    /// Witt vector: a JSON array of element literals, or a full vector
    /// object {"p":..,"ring":..,"components":[..]}.
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    y: Option<String>,
    /// Element literal (for teichmuller).
    #[arg(long)]
    r: Option<String>,
    /// Target length (teichmuller, restrict).
    #[arg(long)]
    len: Option<usize>,
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct KernelArgs {
    #[arg(long)]
    ring: String,
    #[arg(long)]
    p: u64,
    /// First component (element literal).
    #[arg(long)]
    r: String,
    /// Kernel depth: the result has length n+1 and F(z) = 0.
    #[arg(long)]
    n: u32,
    /// Output format: text or json.
    #[arg(long, default_value = "text")]
    emit: String,
}

#[derive(Args)]
struct PreimageArgs {
    #[arg(long)]
    ring: String,
    #[arg(long)]
    p: u64,
    /// Target Witt vector as JSON (array of literals or vector object).
    #[arg(long)]
    target: String,
    /// Print the solver's choice trail.
    #[arg(long)]
    trace: bool,
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args)]
struct ConditionsArgs {
    #[arg(long)]
    ring: String,
    #[arg(long)]
    p: u64,
    /// Residue budget for exhaustive searches.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run a single fixture by name.
    #[arg(long)]
    fixture: Option<String>,
    #[arg(long)]
    json: bool,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match dispatch(cli) {
        Ok(output) => {
            println!("{output}");
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

fn exit_code(e: &WittError) -> i32 {
    match e {
        WittError::Parse { .. } | WittError::InvalidRequest(_) | WittError::RingMismatch(_) => 1,
        WittError::CapabilityMissing(_)
        | WittError::OracleMissing(_)
        | WittError::BudgetExhausted(_)
        | WittError::NotInIdeal(_)
        | WittError::Precondition(_) => 2,
        WittError::VerificationFailed(_) => 3,
        WittError::Internal(_) | WittError::InexactDivision(_) => 4,
    }
}

fn dispatch(cli: Cli) -> Result<String, WittError> {
    match cli.command {
        Command::Poly(args) => cmd_poly(args),
        Command::Witt(args) => cmd_witt(args),
        Command::Kernel(args) => cmd_kernel(args),
        Command::Preimage(args) => cmd_preimage(args),
        Command::Conditions(args) => cmd_conditions(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn check_prime(p: u64) -> Result<(), WittError> {
    if !witt_core::ring::is_prime(p) {
        return Err(WittError::InvalidRequest(format!("{p} is not prime")));
    }
    Ok(())
}

fn cmd_poly(args: PolyArgs) -> Result<String, WittError> {
    check_prime(args.p)?;
    let kind = FamilyKind::from_tag(&args.which).ok_or_else(|| {
        WittError::InvalidRequest(format!(
            "unknown family {:?}; use sum, product, neg, frobenius, or f",
            args.which
        ))
    })?;
    let members = family(args.p, kind, args.level, args.max_level)?;
    let poly = members.last().expect("family returns 0..=level");
    match args.format.as_str() {
        "json" => {
            let encoded = PolyJson::encode(args.p, kind.tag(), args.level, poly);
            Ok(serde_json::to_string(&encoded).expect("serializable"))
        }
        "text" => Ok(format!("{poly}")),
        other => Err(WittError::InvalidRequest(format!(
            "unknown format {other:?}"
        ))),
    }
}

/// Accept either a bare JSON array of element literals or a full vector
/// object; the object's ring and prime must match the flags.
fn parse_witt_arg(ring: &Ring, p: u64, text: &str) -> Result<WittVector, WittError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| WittError::Parse {
        offset: 0,
        msg: format!("bad vector JSON: {e}"),
    })?;
    let json = if value.is_array() {
        let comps: Vec<String> = serde_json::from_value(value).map_err(|e| WittError::Parse {
            offset: 0,
            msg: format!("bad component array: {e}"),
        })?;
        WittJson {
            p,
            ring: ring.spec_string(),
            components: comps,
        }
    } else {
        serde_json::from_value(value).map_err(|e| WittError::Parse {
            offset: 0,
            msg: format!("bad vector object: {e}"),
        })?
    };
    let vec = WittVector::from_json(&json)?;
    if vec.ring() != ring || vec.p() != p {
        return Err(WittError::RingMismatch(
            "vector object does not match --ring/--p".into(),
        ));
    }
    Ok(vec)
}

fn render_vector(v: &WittVector, format: &str) -> Result<String, WittError> {
    match format {
        "json" => Ok(serde_json::to_string(&v.to_json()).expect("serializable")),
        "text" => Ok(format!("{v}")),
        other => Err(WittError::InvalidRequest(format!(
            "unknown format {other:?}"
        ))),
    }
}

fn cmd_witt(args: WittArgs) -> Result<String, WittError> {
    check_prime(args.p)?;
    let ring = parse_ring_spec(&args.ring)?;
    let need_x = || -> Result<WittVector, WittError> {
        let x = args
            .x
            .as_ref()
            .ok_or_else(|| WittError::InvalidRequest("--x is required for this op".into()))?;
        parse_witt_arg(&ring, args.p, x)
    };
    match args.op.as_str() {
        "add" | "mul" => {
            let x = need_x()?;
            let y = parse_witt_arg(
                &ring,
                args.p,
                args.y
                    .as_ref()
                    .ok_or_else(|| WittError::InvalidRequest("--y is required".into()))?,
            )?;
            let out = if args.op == "add" { x.add(&y)? } else { x.mul(&y)? };
            render_vector(&out, &args.format)
        }
        "neg" => render_vector(&need_x()?.neg()?, &args.format),
        "frobenius" => render_vector(&need_x()?.frobenius()?, &args.format),
        "verschiebung" => render_vector(&need_x()?.verschiebung(), &args.format),
        "restrict" => {
            let len = args
                .len
                .ok_or_else(|| WittError::InvalidRequest("--len is required".into()))?;
            render_vector(&need_x()?.restrict(len)?, &args.format)
        }
        "ghost" => {
            let g = need_x()?.ghost();
            match args.format.as_str() {
                "json" => Ok(serde_json::to_string(&json!({
                    "p": g.p,
                    "ring": g.ring.spec_string(),
                    "ghost": g.values.iter().map(|v| g.ring.element_string(v)).collect::<Vec<_>>(),
                }))
                .expect("serializable")),
                "text" => Ok(format!("{g}")),
                other => Err(WittError::InvalidRequest(format!("unknown format {other:?}"))),
            }
        }
        "teichmuller" => {
            let r = args
                .r
                .as_ref()
                .ok_or_else(|| WittError::InvalidRequest("--r is required".into()))?;
            let len = args
                .len
                .ok_or_else(|| WittError::InvalidRequest("--len is required".into()))?;
            let elem = parse_element(&ring, r)?;
            render_vector(&WittVector::teichmuller(args.p, &elem, len)?, &args.format)
        }
        "decompose" => {
            let x = need_x()?;
            let parts = x.v_decompose();
            match args.format.as_str() {
                "json" => Ok(serde_json::to_string(
                    &parts.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
                )
                .expect("serializable")),
                "text" => Ok(parts
                    .iter()
                    .map(|v| format!("{v}"))
                    .collect::<Vec<_>>()
                    .join("\n")),
                other => Err(WittError::InvalidRequest(format!("unknown format {other:?}"))),
            }
        }
        other => Err(WittError::InvalidRequest(format!(
            "unknown op {other:?}; use add, mul, neg, frobenius, verschiebung, \
             ghost, teichmuller, restrict, or decompose"
        ))),
    }
}

fn cmd_kernel(args: KernelArgs) -> Result<String, WittError> {
    check_prime(args.p)?;
    let ring = parse_ring_spec(&args.ring)?;
    let r = parse_element(&ring, &args.r)?;
    let z = kernel_element(&ring, args.p, &r, args.n)?;
    let ghost = z.ghost();
    match args.emit.as_str() {
        "json" => Ok(serde_json::to_string(&json!({
            "vector": z.to_json(),
            "ghost": ghost.values.iter().map(|v| ring.element_string(v)).collect::<Vec<_>>(),
        }))
        .expect("serializable")),
        "text" => Ok(format!("kernel element: {z}\nghost: {ghost}")),
        other => Err(WittError::InvalidRequest(format!(
            "unknown emit format {other:?}"
        ))),
    }
}

fn cmd_preimage(args: PreimageArgs) -> Result<String, WittError> {
    check_prime(args.p)?;
    let ring = parse_ring_spec(&args.ring)?;
    let target = parse_witt_arg(&ring, args.p, &args.target)?;
    let oracles = SolverOracles::for_ring(&ring, args.p);
    let result = solve_frobenius(&oracles, &target)?;
    match args.format.as_str() {
        "json" => {
            let mut obj = json!({ "solution": result.solution.to_json() });
            if args.trace {
                obj["trace"] = json!(result.trace);
            }
            Ok(serde_json::to_string(&obj).expect("serializable"))
        }
        "text" => {
            let mut out = format!("preimage: {}", result.solution);
            if args.trace {
                for line in &result.trace {
                    out.push_str(&format!("\n  {line}"));
                }
            }
            Ok(out)
        }
        other => Err(WittError::InvalidRequest(format!(
            "unknown format {other:?}"
        ))),
    }
}

fn cmd_conditions(args: ConditionsArgs) -> Result<String, WittError> {
    check_prime(args.p)?;
    let ring = parse_ring_spec(&args.ring)?;
    let mut ctx = CheckContext::new(&ring, args.p);
    if let Some(b) = args.budget {
        ctx.budget = Budget {
            residues: b,
            ..Budget::default()
        };
    }
    let matrix = condition_matrix(&ctx);
    if args.json {
        Ok(serde_json::to_string(&matrix.to_json()).expect("serializable"))
    } else {
        Ok(matrix.render_text())
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<String, WittError> {
    let reports = match &args.fixture {
        Some(name) => vec![fixtures::run_fixture(name)?],
        None => fixtures::run_all()?,
    };
    let all_passed = reports.iter().all(|r| r.passed);
    let output = if args.json {
        serde_json::to_string(&reports).expect("serializable")
    } else {
        let mut out = String::new();
        for r in &reports {
            out.push_str(&format!(
                "{} {}\n",
                if r.passed { "PASS" } else { "FAIL" },
                r.name
            ));
            if !r.passed {
                for d in &r.details {
                    out.push_str(&format!("    {d}\n"));
                }
            }
        }
        out.push_str(if all_passed {
            "all fixtures passed"
        } else {
            "FIXTURE FAILURES"
        });
        out
    };
    if all_passed {
        Ok(output)
    } else {
        println!("{output}");
        Err(WittError::VerificationFailed("fixture failures".into()))
    }
}
