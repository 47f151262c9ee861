//! Command-line surface for the crossfam toolkit.
//!
//! Exit codes: 0 = success / property holds, 1 = a property or lemma
//! violation was found (with its witness on stdout), 2 = usage or validation
//! error (single-line message on stderr).

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use crossfam::bounds::{self, BoundGrid, LemmaId};
use crossfam::certify::{chain_certificate, greedy_sequences};
use crossfam::constructions::{Constructed, ConstructionSpec, Kind};
use crossfam::covers::compute_covers_bounded;
use crossfam::predicates::{
    is_cross_t_verbose, is_s_almost_cross_t_verbose, is_maximal, FamilyPair,
};
use crossfam::search::{brute_force_max, maximality_scan, naive_oracle_max, SearchResult};
use crossfam::{Params, SetFamily, Subset};
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(name = "crossfam", version, about = "Verification and search toolkit for almost cross-intersecting set families")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a named family or family pair and emit it as JSON.
    Construct(ConstructArgs),
    /// Evaluate a predicate on a family-pair JSON file.
    Check(CheckArgs),
    /// Compute the covering number and all minimum t-covers of a family.
    Tau(TauArgs),
    /// Evaluate one of the size/product bound functions exactly.
    Bounds(BoundsArgs),
    /// Verify the binomial-inequality lemmas over a parameter grid.
    Lemmas(LemmasArgs),
    /// Run a certificate procedure.
    #[command(subcommand)]
    Certify(CertifyCmd),
    /// Run an exhaustive search or a maximality scan.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Bundle a full verification run into a report directory.
    Report(ReportArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// One of: h1, h2, m1, m2, star_pair, thm2_pair, thm3_singleton_pair,
    /// thm3_cycle_pair, cross_pair.
    #[arg(long)]
    kind: String,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    t: u32,
    #[arg(long, default_value_t = 1)]
    s: u32,
    /// Anchor sets as comma-separated elements; canonical when omitted.
    #[arg(long, value_delimiter = ',')]
    w: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',')]
    x: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',')]
    y: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',')]
    z: Option<Vec<u32>>,
    /// Randomize the free choices instead of taking the canonical ones.
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Predicate {
    CrossT,
    SAlmostCrossT,
    Maximal,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    pred: Predicate,
    /// Family-pair JSON file; "-" reads stdin.
    #[arg(long)]
    input: String,
    /// List every violation instead of capping the witness list.
    #[arg(long)]
    full: bool,
}

#[derive(Args)]
struct TauArgs {
    /// Family JSON file; "-" reads stdin.
    #[arg(long)]
    input: String,
    #[arg(long)]
    t: u32,
    /// Give up if the covering number exceeds this size.
    #[arg(long)]
    max_size: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundFn {
    F1,
    F2,
    F3,
    G1,
    G2,
    G3,
    G4,
    Thresholds,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long = "func", value_enum)]
    func: BoundFn,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    t: u64,
    #[arg(long, default_value_t = 1)]
    s: u64,
    #[arg(long)]
    x: Option<u64>,
}

#[derive(Args)]
struct LemmasArgs {
    /// A single lemma id (7.1 .. 7.6); all of them when omitted.
    #[arg(long)]
    lemma: Option<String>,
    #[arg(long, default_value_t = 8)]
    k_max: u64,
    #[arg(long, default_value_t = 4)]
    t_max: u64,
    #[arg(long, default_value_t = 3)]
    s_max: u64,
    #[arg(long, default_value_t = 3)]
    ell_max: u64,
    /// Offsets added to each lemma's exact hypothesis threshold for n.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0u64, 1, 7, 50, 300])]
    offsets: Vec<u64>,
    /// Write every evaluated inequality instance as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CertifyCmd {
    /// Run the greedy disjoint-sequence decomposition on a pair.
    Greedy {
        #[arg(long)]
        input: String,
        /// Randomize the greedy choices; lexicographic when omitted.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Search for the counting certificate |F_H| <= (k-t+1)^d |F_R| + s.
    Chain {
        /// Family JSON file; "-" reads stdin.
        #[arg(long)]
        input: String,
        /// The anchor set H, comma-separated.
        #[arg(long, value_delimiter = ',')]
        anchor: Vec<u32>,
        /// The reference set G1, comma-separated.
        #[arg(long, value_delimiter = ',')]
        g1: Vec<u32>,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        s: u32,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Exhaustively maximize |F||G| over all valid pairs.
    Brute {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        s: u32,
        /// Restrict to pairs whose common core has fewer than t elements.
        #[arg(long)]
        constrained: bool,
        /// Worker threads; CROSSFAM_THREADS, then all cores, when omitted.
        #[arg(long)]
        threads: Option<usize>,
        /// Use the deliberately naive reference engine instead.
        #[arg(long)]
        oracle: bool,
        /// Omit wall time from the JSON for byte-reproducible output.
        #[arg(long)]
        no_timing: bool,
    },
    /// Scan every k-subset for addability to either side of a pair.
    Maximality {
        #[arg(long)]
        input: String,
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Args)]
struct ReportArgs {
    /// Output directory (created if missing): report.json, report.csv,
    /// families/.
    #[arg(long)]
    out_dir: PathBuf,
}

/// 0 on success, 1 when a property violation was found.
enum Outcome {
    Pass,
    Violation,
}

fn main() {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(Outcome::Pass) => {}
        Ok(Outcome::Violation) => std::process::exit(1),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}

fn read_input(path: &str) -> Result<serde_json::Value> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    serde_json::from_str(&text).map_err(|e| anyhow!("malformed JSON in {path}: {e}"))
}

fn read_pair(path: &str) -> Result<FamilyPair> {
    FamilyPair::from_json(&read_input(path)?).map_err(|e| anyhow!("{e}"))
}

fn read_family(path: &str) -> Result<SetFamily> {
    SetFamily::from_json(&read_input(path)?).map_err(|e| anyhow!("{e}"))
}

fn emit(value: &serde_json::Value, output: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string(value)?;
    match output {
        None => println!("{text}"),
        Some(path) => fs::write(path, text + "\n").with_context(|| format!("writing {path:?}"))?,
    }
    Ok(())
}

fn run(cmd: Cmd) -> Result<Outcome> {
    match cmd {
        Cmd::Construct(args) => construct(args),
        Cmd::Check(args) => check(args),
        Cmd::Tau(args) => tau(args),
        Cmd::Bounds(args) => eval_bounds(args),
        Cmd::Lemmas(args) => lemmas(args),
        Cmd::Certify(cmd) => certify(cmd),
        Cmd::Search(cmd) => search(cmd),
        Cmd::Report(args) => report(args),
    }
}

fn construct(args: ConstructArgs) -> Result<Outcome> {
    let kind: Kind = serde_json::from_value(serde_json::Value::String(args.kind.clone()))
        .map_err(|_| anyhow!("unknown construction kind {:?}", args.kind))?;
    let spec = ConstructionSpec {
        kind,
        params: Params::new(args.n, args.k, args.t, args.s).map_err(|e| anyhow!("{e}"))?,
        w: args.w,
        x: args.x,
        y: args.y,
        z: args.z,
        variant_seed: args.seed,
    };
    let value = match spec.build().map_err(|e| anyhow!("{e}"))? {
        Constructed::Family(f) => f.to_json(),
        Constructed::Pair(p) => p.to_json(),
    };
    emit(&value, args.output.as_deref())?;
    Ok(Outcome::Pass)
}

fn check(args: CheckArgs) -> Result<Outcome> {
    let pair = read_pair(&args.input)?;
    let verdict = match args.pred {
        Predicate::CrossT => is_cross_t_verbose(&pair, args.full),
        Predicate::SAlmostCrossT => is_s_almost_cross_t_verbose(&pair, args.full),
        Predicate::Maximal => is_maximal(&pair).map_err(|e| anyhow!("{e}"))?,
    };
    emit(&verdict.to_json(), None)?;
    Ok(if verdict.holds {
        Outcome::Pass
    } else {
        Outcome::Violation
    })
}

fn tau(args: TauArgs) -> Result<Outcome> {
    let fam = read_family(&args.input)?;
    let max_size = args.max_size.unwrap_or(fam.n());
    let result = compute_covers_bounded(&fam, args.t, max_size)
        .map_err(|e| anyhow!("{e}"))?
        .ok_or_else(|| anyhow!("covering number exceeds the size limit {max_size}"))?;
    emit(&result.to_json(), None)?;
    Ok(Outcome::Pass)
}

fn eval_bounds(args: BoundsArgs) -> Result<Outcome> {
    let need = |v: Option<u64>, name: &str| v.ok_or_else(|| anyhow!("--{name} is required"));
    let (t, s) = (args.t, args.s);
    let value = match args.func {
        BoundFn::F1 => bounds::f1(need(args.n, "n")?, need(args.k, "k")?, t, s, need(args.x, "x")?),
        BoundFn::F2 => bounds::f2(need(args.n, "n")?, need(args.k, "k")?, t, s),
        BoundFn::F3 => bounds::f3(need(args.n, "n")?, need(args.k, "k")?, t, s, need(args.x, "x")?),
        BoundFn::G1 => bounds::g1(need(args.n, "n")?, need(args.k, "k")?, t, s),
        BoundFn::G2 => bounds::g2(need(args.n, "n")?, t, s),
        BoundFn::G3 => bounds::g3(need(args.n, "n")?, t, s),
        BoundFn::G4 => bounds::g4(need(args.n, "n")?, need(args.k, "k")?, t),
        BoundFn::Thresholds => {
            let th = bounds::thresholds(need(args.k, "k")?, t, s).map_err(|e| anyhow!("{e}"))?;
            emit(&serde_json::to_value(&th)?, None)?;
            return Ok(Outcome::Pass);
        }
    }
    .map_err(|e| anyhow!("{e}"))?;
    println!("{value}");
    Ok(Outcome::Pass)
}

fn lemmas(args: LemmasArgs) -> Result<Outcome> {
    let grid = BoundGrid {
        k: (1, args.k_max),
        t: (1, args.t_max),
        s: (1, args.s_max),
        ell: (1, args.ell_max),
        n_offsets: args.offsets.clone(),
    };
    let lemmas = match &args.lemma {
        None => LemmaId::ALL.to_vec(),
        Some(id) => vec![LemmaId::parse(id).map_err(|e| anyhow!("{e}"))?],
    };
    let mut all_verified = true;
    let mut reports = Vec::new();
    let mut csv = String::from("lemma_id,check,params,lhs,rhs,pass\n");
    for lemma in lemmas {
        let report =
            bounds::check_lemma(lemma, &grid, args.csv.is_some()).map_err(|e| anyhow!("{e}"))?;
        all_verified &= report.verified();
        for rec in &report.records {
            let params = rec
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" ");
            csv.push_str(&format!(
                "{},{},{},{},{},{}\n",
                report.lemma_id, rec.check, params, rec.lhs, rec.rhs, rec.pass
            ));
        }
        reports.push(serde_json::to_value(&report)?);
    }
    if let Some(path) = &args.csv {
        fs::write(path, csv).with_context(|| format!("writing {path:?}"))?;
    }
    emit(&serde_json::Value::Array(reports), None)?;
    Ok(if all_verified {
        Outcome::Pass
    } else {
        Outcome::Violation
    })
}

fn certify(cmd: CertifyCmd) -> Result<Outcome> {
    match cmd {
        CertifyCmd::Greedy { input, seed } => {
            let pair = read_pair(&input)?;
            let seq = greedy_sequences(&pair, seed).map_err(|e| anyhow!("{e}"))?;
            let within = seq.within_bound();
            emit(&seq.to_json(), None)?;
            Ok(if within { Outcome::Pass } else { Outcome::Violation })
        }
        CertifyCmd::Chain {
            input,
            anchor,
            g1,
            t,
            s,
        } => {
            let fam = read_family(&input)?;
            let h = Subset::from_elements(fam.n(), &anchor).map_err(|e| anyhow!("{e}"))?;
            let g1 = Subset::from_elements(fam.n(), &g1).map_err(|e| anyhow!("{e}"))?;
            match chain_certificate(&fam, &h, &g1, t, s).map_err(|e| anyhow!("{e}"))? {
                Some(cert) => {
                    emit(&cert.to_json(), None)?;
                    Ok(Outcome::Pass)
                }
                None => {
                    emit(&serde_json::json!({"refuted": true}), None)?;
                    Ok(Outcome::Violation)
                }
            }
        }
    }
}

fn search(cmd: SearchCmd) -> Result<Outcome> {
    match cmd {
        SearchCmd::Brute {
            n,
            k,
            t,
            s,
            constrained,
            threads,
            oracle,
            no_timing,
        } => {
            let params = Params::new(n, k, t, s).map_err(|e| anyhow!("{e}"))?;
            let started = Instant::now();
            let mut result: SearchResult = if oracle {
                naive_oracle_max(&params, constrained)
            } else {
                brute_force_max(&params, constrained, threads)
            }
            .map_err(|e| anyhow!("{e}"))?;
            if !no_timing {
                result.elapsed_ms = Some(started.elapsed().as_millis() as u64);
            }
            emit(&result.to_json(), None)?;
            Ok(Outcome::Pass)
        }
        SearchCmd::Maximality { input, threads } => {
            let pair = read_pair(&input)?;
            let verdict = maximality_scan(&pair, threads).map_err(|e| anyhow!("{e}"))?;
            emit(&verdict.to_json(), None)?;
            Ok(if verdict.holds {
                Outcome::Pass
            } else {
                Outcome::Violation
            })
        }
    }
}

struct Check {
    name: String,
    pass: bool,
    detail: String,
}

fn report(args: ReportArgs) -> Result<Outcome> {
    use crossfam::constructions as cons;
    use crossfam::covers::{compute_covers, exhaustive_covers};
    use crossfam::predicates::{is_cross_t, is_s_almost_cross_t};

    let dir = &args.out_dir;
    let families = dir.join("families");
    fs::create_dir_all(&families).with_context(|| format!("creating {families:?}"))?;

    let mut checks: Vec<Check> = Vec::new();
    let push = |name: &str, pass: bool, detail: String, checks: &mut Vec<Check>| {
        checks.push(Check {
            name: name.to_string(),
            pass,
            detail,
        });
    };

    // Constructions: save each pair and verify its predicate and size product.
    let star = cons::star_pair(10, 3, 1).map_err(|e| anyhow!("{e}"))?;
    let thm2 = cons::thm2_pair(8, 3, 1, 1, None).map_err(|e| anyhow!("{e}"))?;
    let thm3s = cons::thm3_singleton_pair(20, 1, 1, None).map_err(|e| anyhow!("{e}"))?;
    let thm3c = cons::thm3_cycle_pair(20, 1, 1).map_err(|e| anyhow!("{e}"))?;
    let cross = cons::cross_pair(10, 3, 1).map_err(|e| anyhow!("{e}"))?;
    let pairs: Vec<(&str, &FamilyPair, bool)> = vec![
        ("star_10_3_1", &star, true),
        ("thm2_8_3_1_1", &thm2, false),
        ("thm3_singleton_20_1_1", &thm3s, false),
        ("thm3_cycle_20_1_1", &thm3c, false),
        ("cross_10_3_1", &cross, true),
    ];
    for (name, pair, expect_cross) in &pairs {
        emit(&pair.to_json(), Some(&families.join(format!("{name}.json"))))?;
        let almost = is_s_almost_cross_t(pair).holds;
        let cross_holds = is_cross_t(pair).holds;
        let pass = almost && cross_holds == *expect_cross;
        push(
            &format!("construct/{name}"),
            pass,
            format!("|F|={} |G|={} cross={cross_holds}", pair.f.len(), pair.g.len()),
            &mut checks,
        );
    }
    let products: Vec<(&str, bool)> = vec![
        ("thm2_vs_g1", thm2.f.size() * thm2.g.size() == bounds::g1(8, 3, 1, 1).map_err(|e| anyhow!("{e}"))?),
        ("thm3_singleton_vs_g2", thm3s.f.size() * thm3s.g.size() == bounds::g2(20, 1, 1).map_err(|e| anyhow!("{e}"))?),
        ("thm3_cycle_vs_g3", thm3c.f.size() * thm3c.g.size() == bounds::g3(20, 1, 1).map_err(|e| anyhow!("{e}"))?),
        ("cross_vs_g4", cross.f.size() * cross.g.size() == bounds::g4(10, 3, 1).map_err(|e| anyhow!("{e}"))?),
    ];
    for (name, pass) in products {
        push(&format!("product/{name}"), pass, String::new(), &mut checks);
    }

    // Lemma sweep over the full default grid.
    let grid = BoundGrid::acceptance();
    for lemma in LemmaId::ALL {
        let rep = bounds::check_lemma(lemma, &grid, false).map_err(|e| anyhow!("{e}"))?;
        push(
            &format!("lemma/{}", rep.lemma_id),
            rep.verified(),
            format!("{} points", rep.points_checked),
            &mut checks,
        );
    }

    // Oracle equivalences.
    for (n, k, t, s) in [(4, 2, 1, 1), (4, 2, 1, 2)] {
        let params = Params::new(n, k, t, s).map_err(|e| anyhow!("{e}"))?;
        let fast = brute_force_max(&params, false, None).map_err(|e| anyhow!("{e}"))?;
        let slow = naive_oracle_max(&params, false).map_err(|e| anyhow!("{e}"))?;
        push(
            &format!("search/oracle_{n}_{k}_{t}_{s}"),
            fast.agrees_with(&slow),
            format!("max_product={}", fast.max_product),
            &mut checks,
        );
    }

    // Covering numbers on the fixed instances.
    let x = Subset::interval(5, 1, 5).map_err(|e| anyhow!("{e}"))?;
    let w = Subset::from_elements(5, &[1]).map_err(|e| anyhow!("{e}"))?;
    let star5 = cons::h1(5, &x, &w, 2).map_err(|e| anyhow!("{e}"))?;
    let tau_star = compute_covers(&star5, 1).map_err(|e| anyhow!("{e}"))?;
    push("tau/star_5_2", tau_star.tau == 1, format!("tau={}", tau_star.tau), &mut checks);
    let y = Subset::from_elements(5, &[1, 2]).map_err(|e| anyhow!("{e}"))?;
    let m1_fam = cons::m1(5, &y, 2, 1).map_err(|e| anyhow!("{e}"))?;
    let tau_m1 = compute_covers(&m1_fam, 1).map_err(|e| anyhow!("{e}"))?;
    let oracle_m1 = exhaustive_covers(&m1_fam, 1).map_err(|e| anyhow!("{e}"))?;
    push(
        "tau/m1_5_2",
        tau_m1.tau == 2 && tau_m1 == oracle_m1,
        format!("tau={}", tau_m1.tau),
        &mut checks,
    );

    // Crossover boundary.
    let mut boundary_ok = true;
    for t in 1u64..=5 {
        for s in 1u64..=4 {
            for extra in [0u64, 10] {
                let n = 5 * s * (t + 1) * (t + 1) + extra;
                let g2 = bounds::g2(n, t, s).map_err(|e| anyhow!("{e}"))?;
                let g3 = bounds::g3(n, t, s).map_err(|e| anyhow!("{e}"))?;
                boundary_ok &= if t >= s + 2 { g2 > g3 } else { g2 < g3 };
            }
        }
    }
    push("bounds/crossover", boundary_ok, "t vs s+2 rule".into(), &mut checks);

    let all_pass = checks.iter().all(|c| c.pass);
    let json = serde_json::json!({
        "all_pass": all_pass,
        "checks": checks.iter().map(|c| serde_json::json!({
            "name": c.name, "pass": c.pass, "detail": c.detail,
        })).collect::<Vec<_>>(),
    });
    emit(&json, Some(&dir.join("report.json")))?;
    let mut csv = String::from("name,pass,detail\n");
    for c in &checks {
        csv.push_str(&format!("{},{},{}\n", c.name, c.pass, c.detail));
    }
    fs::write(dir.join("report.csv"), csv)?;
    println!("{}", dir.join("report.json").display());
    Ok(if all_pass {
        Outcome::Pass
    } else {
        Outcome::Violation
    })
}
