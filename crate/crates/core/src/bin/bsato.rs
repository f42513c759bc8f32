use std::io::Write;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use bernstein_sato::bl::{b_l_oracle_with, b_l_with, BlOptions, OracleOutcome};
use bernstein_sato::family::{generic_verify, FamilySpec, VerifyOptions};
use bernstein_sato::fan::{kappa, restricted_fan_with, skeleton, FanOptions};
use bernstein_sato::groebner::Budget;
use bernstein_sato::malgrange::{action_check, bs_membership_with, s_annihilator_with, PolyPair};
use bernstein_sato::parse::{parse_direction, parse_poly, parse_s_poly, render};
use bernstein_sato::product::{bernstein_candidate_with, ProductOptions};
use bernstein_sato::scalars::ExactScalar;

/// Bernstein-Sato polynomials of pairs of polynomials, exactly.
#[derive(Parser)]
#[command(name = "bsato", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct PairArgs {
    #[arg(long)]
    f1: String,
    #[arg(long)]
    f2: String,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args, Clone)]
struct BudgetArgs {
    /// Maximum number of S-pairs per Gröbner basis.
    #[arg(long, default_value_t = 500_000)]
    max_pairs: usize,
    /// Maximum size of a Gröbner basis.
    #[arg(long, default_value_t = 50_000)]
    max_basis: usize,
    /// Wall-clock limit per Gröbner basis, in seconds.
    #[arg(long)]
    time_limit: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_pairs: self.max_pairs,
            max_basis: self.max_basis,
            time_limit: self.time_limit.map(Duration::from_secs),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generators of the annihilator of f1^s1 f2^s2 in D[s].
    Ann(PairArgs),
    /// The polynomial b_L in λ for a direction L.
    Bl {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long = "L", value_name = "l1,l2")]
        l: String,
        /// Keep only the factors supported at the origin.
        #[arg(long)]
        local: bool,
        /// Cross-check against the linear-algebra oracle up to this degree.
        #[arg(long)]
        oracle_bound: Option<u32>,
    },
    /// Is b(s1, s2) in the Bernstein-Sato ideal?
    Membership {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        b: String,
    },
    /// The Gröbner fan restricted to the quadrant of directions.
    Fan {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        no_boundary_rays: bool,
        #[arg(long, default_value_t = 64)]
        max_cones: usize,
    },
    /// The shift bound κ.
    Kappa {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 64)]
        max_cones: usize,
    },
    /// The product over the rays of the fan of shifted b_L.
    Bfun {
        #[command(flatten)]
        pair: PairArgs,
        /// Check membership of the product.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 64)]
        max_cones: usize,
    },
    /// The closed-form polynomial for f1 = c1 x1^a + c2 x2^b + g1, f2 = c3 x1^c + c4 x2^d + g2.
    Family {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        c: u32,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value = "0")]
        g1: String,
        #[arg(long, default_value = "0")]
        g2: String,
        #[arg(long, default_value = "1")]
        c1: String,
        #[arg(long, default_value = "1")]
        c2: String,
        #[arg(long, default_value = "1")]
        c3: String,
        #[arg(long, default_value = "1")]
        c4: String,
        #[arg(long, default_value_t = 0)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Bound on numerators and denominators of random parameter values.
        #[arg(long, default_value_t = 5)]
        bound: i64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

enum Failure {
    Usage(String),
    Budget(String),
}

type Outcome = Result<(Value, bool), Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

macro_rules! lift {
    ($e:expr) => {
        $e.map_err(|e| {
            if e.is_budget_exceeded() {
                Failure::Budget(e.to_string())
            } else {
                Failure::Usage(e.to_string())
            }
        })
    };
}

fn pair(args: &PairArgs) -> Result<PolyPair, Failure> {
    let f1 = parse_poly(&args.f1).map_err(|e| usage(format!("--f1: {e}")))?;
    let f2 = parse_poly(&args.f2).map_err(|e| usage(format!("--f2: {e}")))?;
    PolyPair::pair(f1, f2).map_err(usage)
}

fn scalar(name: &str, text: &str) -> Result<ExactScalar, Failure> {
    let p = parse_poly(text).map_err(|e| usage(format!("--{name}: {e}")))?;
    if !p.is_constant() {
        return Err(usage(format!("--{name} must not involve x")));
    }
    Ok(p.constant_term())
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Ann(args) => {
            let f = pair(&args)?;
            let ann = lift!(s_annihilator_with(&f, &args.budget.budget()))?;
            let gens: Vec<String> = ann.iter().map(|g| g.render()).collect();
            Ok((json!({"annihilator": gens}), true))
        }
        Command::Bl {
            pair: args,
            l,
            local,
            oracle_bound,
        } => {
            let f = pair(&args)?;
            let l = parse_direction(&l).map_err(|e| usage(format!("--L: {e}")))?;
            let opts = BlOptions {
                localize: local,
                budget: args.budget.budget(),
                ..BlOptions::default()
            };
            let r = lift!(b_l_with(&f, &l, &opts))?;
            let mut out = json!({
                "L": r.l,
                "b_L": r.b.factor_json(),
                "variable": "lambda",
                "localized": r.localized,
            });
            let mut ok = true;
            if let Some(bound) = oracle_bound {
                let o = lift!(b_l_oracle_with(&f, &l, bound, &args.budget.budget()))?;
                let (found, agrees) = match &o {
                    OracleOutcome::Found(b) => (b.factor_json(), *b == r.global),
                    OracleOutcome::NoneBelow(d) => (json!({"none_below": d}), r.global.degree() > *d),
                };
                ok = agrees;
                out["oracle"] = json!({"bound": bound, "b_L": found, "agrees": agrees});
            }
            Ok((out, ok))
        }
        Command::Membership { pair: args, b } => {
            let f = pair(&args)?;
            let b = parse_s_poly(&b).map_err(|e| usage(format!("--b: {e}")))?;
            if b.nvars() > 2 {
                return Err(usage("--b may only use s1 and s2"));
            }
            let r = lift!(bs_membership_with(&b, &f, &args.budget.budget()))?;
            let mut out = json!({"b": render(&b, 's'), "member": r.member});
            let mut ok = r.member;
            if let Some(j) = r.obstruction {
                out["obstruction"] = json!({"component": j + 1, "nonvanishing_at": format!("s{} = -1", j + 1)});
            }
            if let Some(c) = &r.certificate {
                let replayed = lift!(action_check(c, &f))?;
                ok &= replayed;
                out["replayed"] = Value::Bool(replayed);
                out["operator_terms"] = json!(c.operator.len());
                out["operator"] = Value::String(c.operator.render());
            }
            Ok((out, ok))
        }
        Command::Fan {
            pair: args,
            no_boundary_rays,
            max_cones,
        } => {
            let f = pair(&args)?;
            let opts = FanOptions {
                max_cones,
                include_boundary: !no_boundary_rays,
                budget: args.budget.budget(),
                ..FanOptions::default()
            };
            let fan = lift!(restricted_fan_with(&f, &opts))?;
            Ok((fan.to_json(), true))
        }
        Command::Kappa { pair: args, max_cones } => {
            let f = pair(&args)?;
            let opts = FanOptions {
                max_cones,
                budget: args.budget.budget(),
                ..FanOptions::default()
            };
            let fan = lift!(restricted_fan_with(&f, &opts))?;
            let mut out = kappa(&fan).to_json();
            let sk = lift!(skeleton(&fan))?;
            out["skeleton"] = json!(sk.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>());
            Ok((out, true))
        }
        Command::Bfun {
            pair: args,
            verify,
            max_cones,
        } => {
            let f = pair(&args)?;
            let opts = ProductOptions {
                verify,
                fan: FanOptions {
                    max_cones,
                    budget: args.budget.budget(),
                    ..FanOptions::default()
                },
                budget: args.budget.budget(),
                ..ProductOptions::default()
            };
            let r = lift!(bernstein_candidate_with(&f, &opts))?;
            let ok = r
                .verification
                .as_ref()
                .map_or(true, |v| v.member && v.replayed == Some(true));
            Ok((r.to_json(), ok))
        }
        Command::Family {
            a,
            b,
            c,
            d,
            g1,
            g2,
            c1,
            c2,
            c3,
            c4,
            trials,
            seed,
            bound,
            budget,
        } => {
            let spec = FamilySpec {
                a,
                b,
                c,
                d,
                coeffs: [
                    scalar("c1", &c1)?,
                    scalar("c2", &c2)?,
                    scalar("c3", &c3)?,
                    scalar("c4", &c4)?,
                ],
                g1: parse_poly(&g1).map_err(|e| usage(format!("--g1: {e}")))?,
                g2: parse_poly(&g2).map_err(|e| usage(format!("--g2: {e}")))?,
            };
            let report = spec.validate();
            let mut out = json!({
                "f1": render(&spec.f1(), 'x'),
                "f2": render(&spec.f2(), 'x'),
                "N1": spec.n1(),
                "N2": spec.n2(),
                "validation": report.to_json(),
            });
            if !report.passed() {
                return Ok((out, false));
            }
            let set = |w: Result<std::collections::BTreeSet<i64>, bernstein_sato::family::FamilyError>| lift!(w).map(|w| json!(w));
            out["W1"] = set(spec.w1())?;
            out["W2"] = set(spec.w2())?;
            let eb = lift!(spec.explicit_b())?;
            out["b"] = eb.to_json();
            let mut ok = true;
            if trials > 0 {
                let opts = VerifyOptions {
                    trials,
                    seed,
                    bound,
                    budget: budget.budget(),
                };
                let r = lift!(generic_verify(&spec, &opts))?;
                ok = r.passed();
                out["verification"] = r.to_json()["trials"].clone();
                out["verified"] = Value::Bool(ok);
            }
            Ok((out, ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok((value, ok)) => {
            let mut out = std::io::stdout().lock();
            let text = serde_json::to_string_pretty(&value).expect("serializable");
            if writeln!(out, "{text}").is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
