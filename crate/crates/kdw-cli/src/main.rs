//! Command-line front end: argument parsing, validation, dispatch to
//! the computation library, and deterministic text/JSON rendering.
//!
//! Text documents carry a provenance header (`# key = value` lines)
//! recording the prime, fiber data, and the generator seeds actually
//! used; JSON documents carry the same facts as top-level keys with a
//! byte-deterministic encoding.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use kdw::brieskorn::{
    brieskorn_kdw, brieskorn_kdw_oracle, enumerate_homs_brute, find_ell, hom_orbit_count,
    sol_set, SeifertData,
};
use kdw::cyclicrep::{lens_kdw_cyclic, xi_vector};
use kdw::ffield::Generators;
use kdw::formal::{FormalSum, Term};
use kdw::induction::lens_kdw_psl2;
use kdw::psl2::{enumerate_classes, k1_structure, r_count, ClassId};

#[derive(Parser)]
#[command(
    name = "kdw",
    about = "Exact K-theoretic invariants of lens spaces and Brieskorn spheres",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Override the generator seeds as "DELTA,ZETA_MINUS,X:Y"
    #[arg(long, global = true, value_name = "DELTA,ZETA_MINUS,X:Y")]
    seed_generators: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupKind {
    Cyclic,
    Psl2,
}

#[derive(Subcommand)]
enum Command {
    /// Character-vector ξ(k; ℓ₁,…,ℓ_n) of a cyclic representation
    Xi {
        #[arg(short, long = "k")]
        k: u64,
        #[arg(short, long = "l", value_delimiter = ',', allow_hyphen_values = true, required = true)]
        l: Vec<i64>,
    },
    /// Invariant of the lens space L(k; ℓ₁,…,ℓ_n)
    Lens {
        #[arg(long, value_enum, default_value_t = GroupKind::Cyclic)]
        group: GroupKind,
        #[arg(short, long = "p")]
        p: Option<u64>,
        #[arg(short, long = "k")]
        k: u64,
        #[arg(short, long = "l", value_delimiter = ',', allow_hyphen_values = true, required = true)]
        l: Vec<i64>,
    },
    /// Invariant of the Brieskorn sphere Σ(k₁,k₂,k₃)
    Brieskorn {
        #[arg(short, long = "p")]
        p: u64,
        #[arg(short, long = "k", value_delimiter = ',', required = true)]
        k: Vec<u64>,
        #[arg(short, long = "l", value_delimiter = ',', allow_hyphen_values = true)]
        l: Option<Vec<i64>>,
        /// Also run the exhaustive enumeration and fail on any mismatch
        #[arg(long)]
        oracle: bool,
    },
    /// Conjugacy classes of PSL₂(F_p)
    Psl2Classes {
        #[arg(short, long = "p")]
        p: u64,
    },
    /// r(k): conjugacy classes of k-power-order elements
    Psl2R {
        #[arg(short, long = "p")]
        p: u64,
        #[arg(short, long = "k")]
        k: u64,
    },
    /// Primary decomposition exponents of K₁ of the classifying space
    Psl2K1 {
        #[arg(short, long = "p")]
        p: u64,
    },
    /// Sol_k: the Chebyshev trace solutions for order-k elements
    ChebSol {
        #[arg(short, long = "p")]
        p: u64,
        #[arg(short, long = "k")]
        k: u64,
    },
    /// Exhaustively enumerate Hom(Γ(k₁,k₂,k₃), PSL₂(F_p))
    Homs {
        #[arg(short, long = "p")]
        p: u64,
        #[arg(short, long = "k", value_delimiter = ',', required = true)]
        k: Vec<u64>,
        /// Print only the number of homomorphisms
        #[arg(long)]
        count_only: bool,
    },
    /// Solve for a valid twist vector of the given fiber orders
    FindEll {
        #[arg(short, long = "k", value_delimiter = ',', required = true)]
        k: Vec<u64>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<kdw::Error> for Failure {
    fn from(e: kdw::Error) -> Failure {
        Failure {
            code: e.exit_code() as u8,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// One output document: provenance header plus payload, rendered as
/// `# key = value` text lines or a single sorted JSON object.
struct Document {
    header: Vec<(&'static str, String)>,
    json: Map<String, Value>,
    body: Vec<String>,
}

impl Document {
    fn new() -> Document {
        Document {
            header: Vec::new(),
            json: Map::new(),
            body: Vec::new(),
        }
    }

    fn meta(&mut self, key: &'static str, text: impl ToString, json: Value) {
        self.header.push((key, text.to_string()));
        self.json.insert(key.to_string(), json);
    }

    fn payload(&mut self, key: &'static str, text: impl ToString, json: Value) {
        self.body.push(text.to_string());
        self.json.insert(key.to_string(), json);
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", Value::Object(self.json.clone())),
            Format::Text => {
                let mut out = String::new();
                for (key, value) in &self.header {
                    out.push_str(&format!("# {key} = {value}\n"));
                }
                for line in &self.body {
                    out.push_str(line);
                    out.push('\n');
                }
                out
            }
        }
    }
}

fn parse_seeds(spec: &str) -> Result<(u64, u64, (u64, u64)), Failure> {
    let bad = || invalid(format!("invalid --seed-generators \"{spec}\": expected DELTA,ZETA_MINUS,X:Y"));
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let delta: u64 = parts[0].trim().parse().map_err(|_| bad())?;
    let zm: u64 = parts[1].trim().parse().map_err(|_| bad())?;
    let (xs, ys) = parts[2].trim().split_once(':').ok_or_else(bad)?;
    let x: u64 = xs.trim().parse().map_err(|_| bad())?;
    let y: u64 = ys.trim().parse().map_err(|_| bad())?;
    Ok((delta, zm, (x, y)))
}

fn make_generators(p: u64, seeds: &Option<String>) -> Result<Generators, Failure> {
    match seeds {
        None => Ok(Generators::new(p)?),
        Some(spec) => {
            let (delta, zm, zp) = parse_seeds(spec)?;
            Ok(Generators::with_seeds(p, delta, zm, zp)?)
        }
    }
}

fn seed_meta(doc: &mut Document, gens: &Generators) {
    let zp = gens.zeta_plus();
    let zp_text = format!("{}:{}", zp.x, zp.y);
    doc.meta("delta", gens.delta(), json!(gens.delta()));
    doc.meta("zeta_minus", gens.zeta_minus(), json!(gens.zeta_minus()));
    doc.meta("zeta_plus", &zp_text, json!(zp_text));
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn triple<T: Copy>(items: &[T], what: &str) -> Result<[T; 3], Failure> {
    if items.len() != 3 {
        return Err(invalid(format!("expected exactly three {what}, got {}", items.len())));
    }
    Ok([items[0], items[1], items[2]])
}

fn sum_payload(doc: &mut Document, sum: &FormalSum) {
    doc.payload("sum", sum, sum.to_json());
}

fn class_id_string(id: &ClassId) -> String {
    match id {
        ClassId::Identity => "identity".into(),
        ClassId::UnipotentSquare => "unipotent-square".into(),
        ClassId::UnipotentNonsquare => "unipotent-nonsquare".into(),
        ClassId::Split { trace_pm } => format!("split:{trace_pm}"),
        ClassId::Nonsplit { trace_pm } => format!("nonsplit:{trace_pm}"),
    }
}

fn run(cli: &Cli) -> Result<Document, Failure> {
    let mut doc = Document::new();
    match &cli.command {
        Command::Xi { k, l } => {
            let xi = xi_vector(*k, l)?;
            doc.meta("k", k, json!(k));
            doc.header.push(("ells", join(l)));
            doc.payload(
                "entries",
                Term::Xi(xi.clone()),
                Value::Array(
                    xi.entries().iter().map(|e| json!(e.to_string())).collect(),
                ),
            );
        }
        Command::Lens { group, p, k, l } => match group {
            GroupKind::Cyclic => {
                let sum = lens_kdw_cyclic(*k, l)?;
                doc.meta("group", "cyclic", json!("cyclic"));
                doc.meta("k", k, json!(k));
                doc.meta("ells", join(l), json!(l));
                sum_payload(&mut doc, &sum);
            }
            GroupKind::Psl2 => {
                let p = p.ok_or_else(|| invalid("lens --group psl2 requires -p"))?;
                if l.len() != 1 {
                    return Err(invalid("lens --group psl2 takes exactly one twist -l"));
                }
                let gens = make_generators(p, &cli.seed_generators)?;
                let sum = lens_kdw_psl2(&gens, *k, l[0])?;
                doc.meta("group", "psl2", json!("psl2"));
                doc.meta("p", p, json!(p));
                doc.meta("k", k, json!(k));
                doc.meta("ells", join(l), json!(l));
                seed_meta(&mut doc, &gens);
                sum_payload(&mut doc, &sum);
            }
        },
        Command::Brieskorn { p, k, l, oracle } => {
            let ks = triple(k, "fiber orders")?;
            let ells = match l {
                Some(l) => triple(l, "twists")?,
                None => find_ell(ks)?,
            };
            let sd = SeifertData::new(ks, ells)?;
            let gens = make_generators(*p, &cli.seed_generators)?;
            let sum = brieskorn_kdw(&gens, &sd)?;
            doc.meta("p", p, json!(p));
            doc.meta("ks", join(&ks), json!(ks));
            doc.meta("ells", join(&ells), json!(ells));
            seed_meta(&mut doc, &gens);
            if *oracle {
                let brute = brieskorn_kdw_oracle(&gens, &sd)?;
                if brute != sum {
                    return Err(Failure {
                        code: 1,
                        message: format!(
                            "oracle mismatch: closed form gave [{sum}] but enumeration gave [{brute}]"
                        ),
                    });
                }
                doc.meta("oracle", "match", json!("match"));
            }
            sum_payload(&mut doc, &sum);
        }
        Command::Psl2Classes { p } => {
            let gens = make_generators(*p, &cli.seed_generators)?;
            let classes = enumerate_classes(&gens);
            doc.meta("p", p, json!(p));
            seed_meta(&mut doc, &gens);
            let mut rows = Vec::new();
            for info in &classes {
                let id = class_id_string(&info.id);
                let rep = info.rep.entries();
                doc.body.push(format!("{id} size={} rep={}", info.size, join(&rep)));
                rows.push(json!({"id": id, "rep": rep, "size": info.size}));
            }
            doc.json.insert("classes".into(), Value::Array(rows));
        }
        Command::Psl2R { p, k } => {
            let r = r_count(*p, *k)?;
            doc.meta("p", p, json!(p));
            doc.meta("k", k, json!(k));
            doc.payload("r", r, json!(r));
        }
        Command::Psl2K1 { p } => {
            let factors = k1_structure(*p);
            doc.meta("p", p, json!(p));
            let text = factors
                .iter()
                .map(|(q, e)| format!("{q}^{e}"))
                .collect::<Vec<_>>()
                .join(" ");
            let rows: Vec<Value> = factors.iter().map(|(q, e)| json!([q, e])).collect();
            doc.payload("factors", text, Value::Array(rows));
        }
        Command::ChebSol { p, k } => {
            let sol = sol_set(*p, *k)?;
            doc.meta("p", p, json!(p));
            doc.meta("k", k, json!(k));
            let text = sol
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            doc.payload("sol", text, json!(sol));
        }
        Command::Homs { p, k, count_only } => {
            let ks = triple(k, "fiber orders")?;
            let homs = enumerate_homs_brute(*p, ks)?;
            doc.meta("p", p, json!(p));
            doc.meta("ks", join(&ks), json!(ks));
            if *count_only {
                doc.payload("count", homs.len(), json!(homs.len()));
            } else {
                let orbits = hom_orbit_count(*p, &homs);
                doc.payload("count", format!("count = {}", homs.len()), json!(homs.len()));
                doc.payload("orbits", format!("orbits = {orbits}"), json!(orbits));
            }
        }
        Command::FindEll { k } => {
            let ks = triple(k, "fiber orders")?;
            let ells = find_ell(ks)?;
            doc.meta("ks", join(&ks), json!(ks));
            doc.payload("ells", join(&ells), json!(ells));
        }
    }
    Ok(doc)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(doc) => {
            print!("{}", doc.render(cli.format));
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
