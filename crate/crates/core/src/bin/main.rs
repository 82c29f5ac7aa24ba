use std::process::ExitCode;

use clap::{Parser, Subcommand};

use torus_ech::arith::rational;
use torus_ech::ellipsoid::{crosscheck_entries, crosscheck_spectrum};
use torus_ech::orbit::{degree, enumerate_generators};
use torus_ech::output::{Field, Format, Record};
use torus_ech::spectral::{ech_spectrum, GradedComplex};
use torus_ech::verify::{
    verify_binding_trivializations, verify_bijection, verify_bijection_with, verify_components,
    verify_identities, verify_identities_with, CheckSummary,
};
use torus_ech::{EchError, FibrationParams, IndexEngine, PerturbedValue, ReebCurrent, RotMode};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "torus-ech", version, about = "ECH of the T(2,q) torus-knot fibration of S³")]
struct Cli {
    /// Output format: tsv, json or md.
    #[arg(long, global = true, env = "ECH_FORMAT", default_value = "tsv")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List admissible currents up to a degree, with their ECH index.
    Gens {
        #[arg(long)]
        q: i64,
        #[arg(long)]
        max_degree: u128,
    },
    /// ECH index of b^B h^H e^E.
    Index {
        #[arg(long)]
        q: i64,
        /// Multiplicities as B,H,E.
        #[arg(long, value_parser = parse_current)]
        gen: ReebCurrent,
        /// Also print (c, Q, CZ) in the orbibundle trivialization.
        #[arg(long)]
        components: bool,
    },
    /// The first `count` ECH capacities.
    Spectrum {
        #[arg(long)]
        q: i64,
        #[arg(long)]
        count: usize,
    },
    /// Rank of knot-filtered ECH of the binding in one grading.
    Knot {
        #[arg(long)]
        q: i64,
        #[arg(long)]
        grading: u64,
        /// Filtration level, e.g. 6, 13/2, 6+δ, 6-δ.
        #[arg(long = "K")]
        level: PerturbedValue,
        #[arg(long, default_value = "exact")]
        rot: RotMode,
    },
    /// Run the invariant suite; exit 1 on any failure.
    Verify {
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<i64>,
        #[arg(long, default_value_t = 400)]
        max_degree: u128,
        #[arg(long, default_value_t = 100)]
        max_m: u64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        /// Run the suite against a deliberately corrupted index table.
        #[arg(long)]
        self_test_corrupt: bool,
    },
}

fn parse_current(s: &str) -> Result<ReebCurrent, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [b, h, e] = parts.as_slice() else {
        return Err(format!("expected B,H,E, got {s:?}"));
    };
    let n = |x: &str| x.parse::<u64>().map_err(|err| format!("{x:?}: {err}"));
    Ok(ReebCurrent::new(n(b)?, n(h)?, n(e)?))
}

fn engine(q: i64) -> Result<IndexEngine, EchError> {
    IndexEngine::new(FibrationParams::new(q)?)
}

fn gens(q: i64, max_degree: u128) -> Result<Record, EchError> {
    let eng = engine(q)?;
    let mut rec = Record::new("gens", &["degree", "generator", "index"])
        .param("q", Field::int(q))
        .param("max_degree", Field::int(max_degree));
    for c in enumerate_generators(eng.params(), max_degree) {
        rec.push_row(vec![
            Field::int(degree(eng.params(), &c)),
            Field::Current(c),
            Field::Int(eng.ech_index(&c)),
        ]);
    }
    Ok(rec)
}

fn index(q: i64, c: ReebCurrent, components: bool) -> Result<Record, EchError> {
    let eng = engine(q)?;
    let mut cols = vec!["generator", "degree", "index"];
    if components {
        cols.extend(["c", "Q", "CZ"]);
    }
    let mut rec = Record::new("index", &cols)
        .param("q", Field::int(q))
        .param("gen", Field::Current(c))
        .param("components", Field::Bool(components));
    let mut row = vec![
        Field::Current(c),
        Field::int(degree(eng.params(), &c)),
        Field::Int(eng.ech_index(&c)),
    ];
    if components {
        let comp = eng.ech_index_components(&c);
        row.extend([Field::Int(comp.chern), Field::Int(comp.pairing), Field::Int(comp.total_cz)]);
    }
    rec.push_row(row);
    if !c.is_admissible() {
        rec.warn("non-admissible");
    }
    Ok(rec)
}

fn spectrum(q: i64, count: usize) -> Result<Record, EchError> {
    let eng = engine(q)?;
    let mut rec = Record::new("spectrum", &["k", "c_k", "generator"])
        .param("q", Field::int(q))
        .param("count", Field::int(count as u64));
    for e in ech_spectrum(&eng, count)? {
        rec.push_row(vec![Field::int(e.k as u64), Field::Fraction(e.c_k), Field::Current(e.witness.current)]);
    }
    Ok(rec)
}

fn knot(q: i64, grading: u64, level: PerturbedValue, rot: RotMode) -> Result<Record, EchError> {
    let eng = engine(q)?;
    let mut rec = Record::new("knot", &["grading", "K", "rank", "threshold"])
        .param("q", Field::int(q))
        .param("grading", Field::int(grading))
        .param("K", Field::Perturbed(level.clone()))
        .param("rot", Field::text(rot.to_string()));
    let (rank, threshold) = if grading % 2 == 1 {
        (0, Field::Null)
    } else {
        let k = usize::try_from(grading / 2).map_err(|_| EchError::RejectedInput(format!("grading {grading} is too large")))?;
        let cx = GradedComplex::build(&eng, k)?;
        (cx.knot_filtered_rank(grading, &level, rot)?, Field::Perturbed(cx.knot_threshold(k, rot)?))
    };
    rec.push_row(vec![Field::int(grading), Field::Perturbed(level), Field::int(rank), threshold]);
    Ok(rec)
}

fn summary_row(rec: &mut Record, q: i64, s: &CheckSummary) {
    rec.push_row(vec![
        Field::int(q),
        Field::text(s.name),
        Field::int(s.checks),
        Field::text(if s.pass() { "pass" } else { "fail" }),
    ]);
    for f in &s.failures {
        rec.warn(format!("q = {q}, {}: {f}", s.name));
    }
}

fn verify(qs: &[i64], max_degree: u128, max_m: u64, count: usize, corrupt: bool) -> Result<(Record, bool), EchError> {
    let mut rec = Record::new("verify", &["q", "check", "checks", "result"])
        .param("q", Field::text(qs.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
        .param("max_degree", Field::int(max_degree))
        .param("max_m", Field::int(max_m))
        .param("count", Field::int(count as u64))
        .param("self_test_corrupt", Field::Bool(corrupt));
    // validate every q before doing any work
    let engines = qs.iter().map(|&q| engine(q).map(|e| (q, e))).collect::<Result<Vec<_>, _>>()?;
    let mut ok = true;
    for (q, eng) in &engines {
        let (q, qu) = (*q, eng.params().q() as u64);
        // b e^q sits strictly inside the degree-4q band, so only the
        // within-degree and bijection checks can see a shift of it
        let bad = ReebCurrent::new(1, 0, qu);
        let corrupted = |c: &ReebCurrent| {
            let i = eng.ech_index(c);
            if *c == bad {
                i + 2
            } else {
                i
            }
        };
        let mut suites = Vec::new();
        if corrupt {
            suites.push(verify_bijection_with(eng.params(), max_degree, corrupted));
        } else {
            suites.push(verify_bijection(eng, max_degree));
            suites.push(verify_components(eng, max_degree));
            suites.push(verify_binding_trivializations(eng, 100));
        }
        let ids = if corrupt {
            verify_identities_with(eng.params(), max_m, corrupted)
        } else {
            verify_identities(eng, max_m)
        };
        suites.push(CheckSummary {
            name: "identities",
            checks: ids.checks,
            failures: ids.failures.iter().take(16).map(ToString::to_string).collect(),
        });
        let cross = if corrupt {
            let mut entries = ech_spectrum(eng, count)?;
            let last = entries.len() - 1;
            entries[last].c_k += rational(1, 2 * qu as i64);
            crosscheck_entries(eng, &entries)?
        } else {
            crosscheck_spectrum(eng, count)?
        };
        suites.push(CheckSummary {
            name: "ellipsoid",
            checks: cross.count as u64,
            failures: cross
                .mismatches
                .iter()
                .map(|m| format!("k = {}: 2q·c_k = {}, N_k(2,q) = {}", m.k, m.rescaled_capacity, m.expected_degree))
                .collect(),
        });
        for s in &suites {
            ok &= s.pass();
            summary_row(&mut rec, q, s);
        }
    }
    Ok((rec, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gens { q, max_degree } => gens(q, max_degree).map(|r| (r, true)),
        Command::Index { q, gen, components } => index(q, gen, components).map(|r| (r, true)),
        Command::Spectrum { q, count } => spectrum(q, count).map(|r| (r, true)),
        Command::Knot { q, grading, level, rot } => knot(q, grading, level, rot).map(|r| (r, true)),
        Command::Verify {
            q,
            max_degree,
            max_m,
            count,
            self_test_corrupt,
        } => verify(&q, max_degree, max_m, count, self_test_corrupt),
    };
    match result {
        Ok((rec, ok)) => {
            print!("{}", rec.render(cli.format));
            if cli.format != Format::Json {
                for w in &rec.warnings {
                    eprintln!("warning: {w}");
                }
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY)
            }
        }
        Err(EchError::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
