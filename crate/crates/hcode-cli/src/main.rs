//! Command-line front end: admissibility tables, codeword generation,
//! distance and entropy measurements, restricted spectra, and the full
//! verification suite, all emitted as stable JSON reports.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage error.

mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hcode::checks::{self, CheckResult};
use hcode::entanglement::{brute_force_entropy, entropy, topological_entropy};
use hcode::gf3::Trit;
use hcode::lattice::{Lattice, Region};
use hcode::metrics::{
    constant_charge, min_distance, sampled_distance_upper_bound, sector_census, ChargeSector,
    MetricsError,
};
use hcode::spectra::dense::spectrum_multiset;
use hcode::spectra::hamiltonians::{
    boundary_hamiltonian, build_hx_3x3, build_hx_prime_3x3, build_hz,
};
use hcode::spectra::sector::{restrict_to_codewords, restricted_ground_space, sector_codeword_basis};
use hcode::spectra::{compile_real, lowest_eigenpairs, solve_hx_constraints};
use hcode::automaton::{boundary_from_index, generate_codeword, HCode};

use report::Report;

#[derive(Parser)]
#[command(
    name = "hcode",
    version,
    about = "Holographic qutrit codes: admissibility, codewords, distance, entropy, spectra"
)]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write the full JSON report to this path ("-" for stdout).
    #[arg(long, global = true)]
    json: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Table of admissible tori: minimal m with T_n^m = I for each n.
    Admissible(AdmissibleArgs),
    /// Generate a codeword from a boundary row and print its text form.
    Codeword(CodewordArgs),
    /// Minimum Hamming distance (exhaustive, or sampled upper bound).
    Distance(DistanceArgs),
    /// Region entanglement entropy and topological entropy.
    Entropy(EntropyArgs),
    /// Restricted spectra of the parent and boundary Hamiltonians.
    Spectrum(SpectrumArgs),
    /// Run the verification suite at scale k (torus sides up to 3^k).
    Verify(VerifyArgs),
}

#[derive(Args)]
struct AdmissibleArgs {
    /// Boundary length or inclusive range, e.g. "7" or "3..12".
    #[arg(long)]
    n: String,
    /// Largest period to search.
    #[arg(long, default_value_t = 1000)]
    m_max: u64,
    /// Also write the table as CSV (columns n, minimal_m, admissible_examples).
    #[arg(long)]
    csv: Option<String>,
}

#[derive(Args)]
struct LatticeArgs {
    /// Torus dimensions: N (boundary length) and M (rows).
    #[arg(long, num_args = 2, value_names = ["N", "M"])]
    torus: Option<Vec<usize>>,
    /// Patch dimensions: N (boundary length) and M (depth).
    #[arg(long, num_args = 2, value_names = ["N", "M"])]
    patch: Option<Vec<usize>>,
}

impl LatticeArgs {
    fn build(&self) -> Result<Lattice, String> {
        match (&self.torus, &self.patch) {
            (Some(t), None) => Lattice::torus(t[0], t[1]).map_err(|e| e.to_string()),
            (None, Some(p)) => Lattice::patch(p[0], p[1]).map_err(|e| e.to_string()),
            _ => Err("exactly one of --torus N M or --patch N M is required".into()),
        }
    }

    fn describe(&self) -> serde_json::Value {
        match (&self.torus, &self.patch) {
            (Some(t), None) => json!({"type": "torus", "n": t[0], "m": t[1]}),
            (None, Some(p)) => json!({"type": "patch", "n": p[0], "m": p[1]}),
            _ => json!(null),
        }
    }
}

#[derive(Args)]
struct CodewordArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Boundary trits as digits, e.g. "100".
    #[arg(long)]
    boundary: String,
    /// Write the codeword text format here instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct DistanceArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Sample this many random codewords instead of the exhaustive sweep
    /// (reports an upper bound; required beyond 16 boundary trits).
    #[arg(long)]
    sampled: Option<u64>,
    /// Seed for the sampled mode.
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Args)]
struct EntropyArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
    /// Region: "triangle" (first up-triangle) or "sites:0,1,3".
    #[arg(long, default_value = "triangle")]
    region: String,
    /// Compute the topological entropy of the up-triangle A, B, C split.
    #[arg(long)]
    topo: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OperatorKind {
    Hz,
    Hx,
    HxPrime,
    H,
    HPrime,
    Boundary,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Which operator to diagonalize (torus operators live on the 3x3 torus).
    #[arg(long, value_enum)]
    operator: OperatorKind,
    /// Restrict to one charge sector (0, 1 or 2).
    #[arg(long)]
    sector: Option<u8>,
    /// Ring length for the boundary Hamiltonian (3..=9).
    #[arg(long, default_value_t = 3)]
    n: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Scale: 1 (3x3 torus, full spectral suite) or 2 (adds the 9x9 sweeps).
    #[arg(long, default_value_t = 2)]
    k: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .is_err()
        {
            eprintln!("warning: thread pool already initialized; --workers ignored");
        }
    }
    let outcome = match &cli.command {
        Command::Admissible(args) => run_admissible(args),
        Command::Codeword(args) => run_codeword(args),
        Command::Distance(args) => run_distance(args),
        Command::Entropy(args) => run_entropy(args),
        Command::Spectrum(args) => run_spectrum(args),
        Command::Verify(args) => run_verify(args),
    };
    match outcome {
        Ok(report) => {
            let failed = report.failed_checks();
            report.render(cli.json.as_deref());
            if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn parse_n_range(spec: &str) -> Result<(usize, usize), String> {
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| format!("cannot parse {s:?} as an integer"))
    };
    let (lo, hi) = match spec.split_once("..") {
        Some((lo, hi)) => (parse(lo)?, parse(hi)?),
        None => {
            let n = parse(spec)?;
            (n, n)
        }
    };
    if lo < 2 || hi < lo {
        return Err(format!(
            "boundary range must satisfy 2 <= lo <= hi, got {lo}..{hi}"
        ));
    }
    Ok((lo, hi))
}

fn run_admissible(args: &AdmissibleArgs) -> Result<Report, String> {
    let (lo, hi) = parse_n_range(&args.n)?;
    let mut report = Report::new("admissible");
    report.input("n", json!(format!("{lo}..{hi}")));
    report.input("m_max", json!(args.m_max));

    let table: Vec<_> = hcode::search_admissible(hi, args.m_max)
        .into_iter()
        .filter(|e| e.n >= lo)
        .collect();
    println!("{:>4} {:>10}  admissible examples", "n", "minimal m");
    for entry in &table {
        println!(
            "{:>4} {:>10}  {}",
            entry.n,
            entry.minimal_m,
            entry
                .examples
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
    }
    let absent: Vec<serde_json::Value> = (lo..=hi)
        .filter(|n| table.iter().all(|e| e.n != *n))
        .map(|n| {
            let reason = if n % 2 == 0 {
                "transfer matrix singular over GF(3) (even n): no power is the identity"
            } else {
                "no period found up to m_max"
            };
            println!("{n:>4}          -  {reason}");
            json!({"n": n, "reason": reason})
        })
        .collect();
    // listed periods are multiples of the minimal ones
    for (n, m) in [(3usize, 3u64), (9, 9), (5, 40), (7, 182), (11, 121)] {
        if n < lo || n > hi {
            continue;
        }
        if let Some(entry) = table.iter().find(|e| e.n == n) {
            report.check(CheckResult::pass_fail(
                &format!("listed_period_{n}_{m}_is_multiple"),
                m % entry.minimal_m == 0,
                format!("{m} = k * minimal_m({n})"),
                format!("minimal_m = {}", entry.minimal_m),
                None,
            ));
        }
    }
    let csv = {
        let mut text = String::from("n,minimal_m,admissible_examples\n");
        for entry in &table {
            text.push_str(&format!(
                "{},{},{}\n",
                entry.n,
                entry.minimal_m,
                entry
                    .examples
                    .iter()
                    .map(|m| m.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
        }
        text
    };
    if let Some(path) = &args.csv {
        std::fs::write(path, &csv).map_err(|e| format!("cannot write {path}: {e}"))?;
    }
    report.results(json!({ "table": table, "no_period": absent, "csv": csv }));
    Ok(report)
}

fn parse_boundary(digits: &str, expected: usize) -> Result<Vec<Trit>, String> {
    let values: Result<Vec<Trit>, String> = digits
        .chars()
        .map(|ch| {
            ch.to_digit(10)
                .filter(|&d| d < 3)
                .map(|d| Trit::new(d as u8).unwrap())
                .ok_or_else(|| format!("boundary digit {ch:?} is not 0, 1 or 2"))
        })
        .collect();
    let values = values?;
    if values.len() != expected {
        return Err(format!(
            "boundary has {} digits, lattice expects {expected}",
            values.len()
        ));
    }
    Ok(values)
}

fn run_codeword(args: &CodewordArgs) -> Result<Report, String> {
    let lattice = args.lattice.build()?;
    let boundary = parse_boundary(&args.boundary, lattice.boundary_len())?;
    let codeword = generate_codeword(&boundary, &lattice).map_err(|e| e.to_string())?;
    let text = codeword.to_text();
    match &args.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| format!("cannot write {path}: {e}"))?
        }
        None => print!("{text}"),
    }
    let mut report = Report::new("codeword");
    report.input("lattice", args.lattice.describe());
    report.input("boundary", json!(args.boundary));
    let charge = if lattice.is_torus() {
        constant_charge(&codeword, true)
            .map_err(|e| e.to_string())?
            .map(|c| c.label().value())
    } else {
        None
    };
    report.results(json!({
        "text": text,
        "weight": codeword.weight(),
        "neutral": codeword.satisfies_neutralization(),
        "charge": charge,
    }));
    Ok(report)
}

fn run_distance(args: &DistanceArgs) -> Result<Report, String> {
    let lattice = args.lattice.build()?;
    let mut report = Report::new("distance");
    report.input("lattice", args.lattice.describe());
    let census = sector_census(&lattice).ok();
    let charge_constant = if lattice.is_torus() {
        let n = lattice.boundary_len();
        let samples = if n <= 3 { 27 } else { 1000 };
        let mut all_constant = true;
        for idx in 0..samples {
            let boundary = boundary_from_index(
                (idx * 2_654_435_761u64) % 3u64.pow(n.min(16) as u32),
                n,
            );
            let cw = generate_codeword(&boundary, &lattice).map_err(|e| e.to_string())?;
            all_constant &= constant_charge(&cw, true)
                .map_err(|e| e.to_string())?
                .is_some();
        }
        Some(all_constant)
    } else {
        None
    };
    match args.sampled {
        None => match min_distance(&lattice) {
            Ok(d) => {
                println!("minimum Hamming distance: {d} (exhaustive)");
                report.results(json!({
                    "n": lattice.boundary_len(),
                    "m": lattice.depth(),
                    "min_distance": d,
                    "exhaustive": true,
                    "sector_counts": census,
                    "charge_constant": charge_constant,
                }));
            }
            Err(MetricsError::EnumerationGuard { n, max }) => {
                return Err(format!(
                    "boundary of {n} trits exceeds the exhaustive guard of {max}; \
                     pass --sampled COUNT for an upper bound"
                ));
            }
            Err(e) => return Err(e.to_string()),
        },
        Some(samples) => {
            let bound = sampled_distance_upper_bound(&lattice, samples, args.seed)
                .map_err(|e| e.to_string())?;
            println!(
                "minimum-distance upper bound: {} ({} samples, not exhaustive)",
                bound.upper_bound, bound.samples
            );
            report.results(json!({
                "n": lattice.boundary_len(),
                "m": lattice.depth(),
                "min_distance_upper_bound": bound.upper_bound,
                "exhaustive": false,
                "samples": bound.samples,
                "sector_counts": census,
                "charge_constant": charge_constant,
            }));
        }
    }
    Ok(report)
}

fn parse_region(spec: &str, lattice: &Lattice) -> Result<Region, String> {
    if spec == "triangle" {
        return Ok(Region::new(lattice.up_triangles()[0]));
    }
    if let Some(list) = spec.strip_prefix("sites:") {
        let sites: Result<Vec<usize>, String> = list
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| format!("bad site id {s:?}"))
            })
            .collect();
        let region = Region::new(sites?);
        region.validate(lattice).map_err(|e| e.to_string())?;
        return Ok(region);
    }
    Err(format!(
        "cannot parse region {spec:?}; use \"triangle\" or \"sites:0,1,3\""
    ))
}

fn run_entropy(args: &EntropyArgs) -> Result<Report, String> {
    let lattice = args.lattice.build()?;
    let code = HCode::new(lattice.clone()).map_err(|e| e.to_string())?;
    let mut report = Report::new("entropy");
    report.input("lattice", args.lattice.describe());
    report.input("region", json!(args.region));
    report.input("topo", json!(args.topo));

    if args.topo {
        let tri = lattice.up_triangles()[0];
        let value = topological_entropy(
            &code,
            &Region::new([tri[0]]),
            &Region::new([tri[1]]),
            &Region::new([tri[2]]),
        )
        .map_err(|e| e.to_string())?;
        println!("topological entropy (up-triangle A|B|C): {value}");
        report.results(json!({
            "triangle_sites": tri,
            "topological_entropy": value,
        }));
        report.check(CheckResult::pass_fail(
            "topological_entropy_is_minus_one",
            value == -1,
            "-1",
            value.to_string(),
            None,
        ));
        return Ok(report);
    }

    let region = parse_region(&args.region, &lattice)?;
    let result = entropy(&code, &region).map_err(|e| e.to_string())?;
    println!(
        "entropy of region {:?}: {} (base-3 units, rank method)",
        result.region_sites, result.entropy
    );
    let oracle = brute_force_entropy(&code, &region).ok();
    if let Some(o) = oracle {
        report.check(CheckResult::pass_fail(
            "rank_method_matches_oracle",
            (o - result.entropy).abs() < hcode::entanglement::ORACLE_TOL,
            format!("{}", result.entropy),
            format!("{o:.12}"),
            Some(hcode::entanglement::ORACLE_TOL),
        ));
    }
    report.results(json!({
        "table": [result],
        "oracle_entropy": oracle,
    }));
    Ok(report)
}

fn sector_from_flag(sector: Option<u8>) -> Result<Option<ChargeSector>, String> {
    match sector {
        None => Ok(None),
        Some(s) if s < 3 => Ok(Some(ChargeSector::new(Trit::new(s).unwrap()))),
        Some(s) => Err(format!("sector must be 0, 1 or 2, got {s}")),
    }
}

fn run_spectrum(args: &SpectrumArgs) -> Result<Report, String> {
    let mut report = Report::new("spectrum");
    report.input("sector", json!(args.sector));
    let sector = sector_from_flag(args.sector)?;
    let cluster_tol = 1e-9;

    if let OperatorKind::Boundary = args.operator {
        {
            if !(3..=9).contains(&args.n) {
                return Err(format!("boundary ring length must be 3..=9, got {}", args.n));
            }
            report.input("operator", json!("boundary"));
            report.input("n", json!(args.n));
            let h = boundary_hamiltonian(args.n);
            let compiled = compile_real(&h).expect("boundary Hamiltonian is classical");
            let mut sectors = Vec::new();
            let mut ground_energies = Vec::new();
            for s in 0..3u8 {
                let indices: Vec<usize> = (0..compiled.dim)
                    .filter(|&idx| {
                        hcode::spectra::dense::basis_digits(idx, args.n)
                            .iter()
                            .map(|t| t.value() as u32)
                            .sum::<u32>()
                            % 3
                            == s as u32
                    })
                    .collect();
                let block = compiled.restrict(&indices).map_err(|e| e.to_string())?;
                let pairs =
                    lowest_eigenpairs(&block, 2, 1e-8, 200_000, 42).map_err(|e| e.to_string())?;
                ground_energies.push(pairs[0].0);
                sectors.push(json!({
                    "sector": s,
                    "dimension": indices.len(),
                    "two_lowest": [pairs[0].0, pairs[1].0],
                }));
            }
            let expected = -3.0 * args.n as f64;
            let threefold = ground_energies
                .iter()
                .all(|&e| (e - expected).abs() < 1e-6);
            println!(
                "boundary ring n={}: sector ground energies {:?}",
                args.n, ground_energies
            );
            report.check(CheckResult::pass_fail(
                "threefold_ground_space",
                threefold,
                format!("-3n = {expected} in each of the 3 sectors"),
                format!("{ground_energies:?}"),
                Some(1e-6),
            ));
            report.results(json!({ "operator": "boundary", "sectors": sectors }));
            return Ok(report);
        }
    }

    let lattice = Lattice::torus(3, 3).map_err(|e| e.to_string())?;
    let hz = build_hz(&lattice);
    let hx = build_hx_3x3(&lattice).map_err(|e| e.to_string())?;
    let hxp = build_hx_prime_3x3(&lattice).map_err(|e| e.to_string())?;
    let (name, op) = match args.operator {
        OperatorKind::Hz => ("hz", hz.clone()),
        OperatorKind::Hx => ("hx", hx.clone()),
        OperatorKind::HxPrime => ("hx-prime", hxp.clone()),
        OperatorKind::H => ("h", hz.add(&hx)),
        OperatorKind::HPrime => ("h-prime", hz.add(&hxp)),
        OperatorKind::Boundary => unreachable!(),
    };
    report.input("operator", json!(name));

    let (eigenvalues, dimension, basis_name) = match (sector, args.operator) {
        (Some(s), _) => {
            let basis = sector_codeword_basis(&lattice, s).map_err(|e| e.to_string())?;
            let matrix = op
                .restrict_to_classical(&basis)
                .map_err(|e| format!("operator does not preserve the sector: {e}"))?;
            let (values, _) = hcode::spectra::dense::eigh(&matrix);
            (values, basis.len(), format!("sector-{} codewords", s.label()))
        }
        (None, OperatorKind::Hz) => {
            // H_Z is diagonal; its full spectrum comes from the classical sweep
            let mut values: Vec<f64> = (0..3u64.pow(9))
                .map(|idx| {
                    let digits = boundary_from_index(idx, 9);
                    hcode::spectra::hz_eigenvalue(&digits, &lattice)
                })
                .collect();
            values.sort_by(|a, b| a.partial_cmp(b).unwrap());
            (values, 3usize.pow(9), "full register (diagonal)".to_string())
        }
        (None, _) => {
            let matrix = restrict_to_codewords(&op, &lattice).map_err(|e| e.to_string())?;
            let (values, _) = hcode::spectra::dense::eigh(&matrix);
            (values, 27, "codeword space".to_string())
        }
    };
    let multiset = spectrum_multiset(&eigenvalues, cluster_tol);
    let ground = restricted_or_none(&op, &lattice, sector);
    println!("spectrum of {name} on the {basis_name}:");
    for (value, multiplicity) in &multiset {
        println!("  {value:>10.6}  (x{multiplicity})");
    }
    let hermitian = op.is_hermitian(hcode::spectra::HERMITICITY_TOL);
    report.check(CheckResult::pass_fail(
        "hermitian",
        hermitian,
        "deviation < 1e-12",
        format!("{hermitian}"),
        Some(hcode::spectra::HERMITICITY_TOL),
    ));
    report.results(json!({
        "operator": name,
        "basis": basis_name,
        "dimension": dimension,
        "eigenvalues": multiset
            .iter()
            .map(|(v, m)| json!({"value": v, "multiplicity": m}))
            .collect::<Vec<_>>(),
        "ground_degeneracy": ground,
        "constraints": if matches!(args.operator, OperatorKind::Hx | OperatorKind::HxPrime) {
            Some(solve_hx_constraints(&lattice).map_err(|e| e.to_string())?)
        } else {
            None
        },
    }));
    Ok(report)
}

fn restricted_or_none(
    op: &hcode::spectra::OperatorSum,
    lattice: &Lattice,
    sector: Option<ChargeSector>,
) -> Option<usize> {
    let matrix = match sector {
        Some(s) => {
            let basis = sector_codeword_basis(lattice, s).ok()?;
            op.restrict_to_classical(&basis).ok()?
        }
        None => restrict_to_codewords(op, lattice).ok()?,
    };
    restricted_ground_space(&matrix, 1e-6).ok().map(|g| g.degeneracy)
}

fn run_verify(args: &VerifyArgs) -> Result<Report, String> {
    let results = checks::verify_all(args.k).map_err(|e| e.to_string())?;
    let mut report = Report::new("verify");
    report.input("k", json!(args.k));
    for r in &results {
        println!("{}", r.line());
        report.check(r.clone());
    }
    let passed = results.iter().filter(|r| r.passed()).count();
    println!("{passed}/{} checks passed", results.len());
    report.results(json!({
        "total": results.len(),
        "passed": passed,
    }));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_range_parsing() {
        assert_eq!(parse_n_range("7").unwrap(), (7, 7));
        assert_eq!(parse_n_range("3..12").unwrap(), (3, 12));
        assert!(parse_n_range("1").is_err());
        assert!(parse_n_range("9..3").is_err());
        assert!(parse_n_range("x").is_err());
    }

    #[test]
    fn boundary_parsing() {
        assert_eq!(parse_boundary("102", 3).unwrap().len(), 3);
        assert!(parse_boundary("103", 3).is_err());
        assert!(parse_boundary("10", 3).is_err());
    }
}
