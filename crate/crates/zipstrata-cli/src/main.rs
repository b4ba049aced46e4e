use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use zipstrata::glnzip::{
    fp_point_census, length2_closed_form, length2_cross_check, random_invertible, xi_classify, Signature,
};
use zipstrata::hasse::{e_w_set, hasse_any_lweight, hasse_feasible, hasse_report, HasseReport};
use zipstrata::linalg::Matrix;
use zipstrata::scalar::FiniteField;
use zipstrata::strata::{decide_smooth, is_small, xi_of_weyl};
use zipstrata::zipdatum::{GlSpec, SigmaSpec};
use zipstrata::{Error, SimpleSet, WeylElement, ZipDatum, ZipDatumDoc, F2, F3, F4, F5, F7, F8, F9};

const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Parser)]
#[command(
    name = "zipstrata",
    version,
    about = "Zip strata: closure orders, smoothness verdicts, Hasse feasibility, GL_n censuses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List ^I W with lengths, canonical types, smallness and closure covers.
    StrataList {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Decide smoothness of the pair (w, w'). Aliases for GL_n: w1, w2, wprime.
    Decide {
        #[command(flatten)]
        datum: DatumArgs,
        w: String,
        w_prime: String,
    },
    /// Closed form against the decision procedure for 2 <= s <= r, r + s <= N.
    SweepLength2 {
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Hasse-invariant feasibility for w at λ, or for any L-weight when λ is omitted.
    Hasse {
        #[command(flatten)]
        datum: DatumArgs,
        w: String,
        /// Comma-separated weight in lattice coordinates.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Ξ of a Weyl group element, or of a matrix over F_q.
    Xi {
        #[command(flatten)]
        datum: DatumArgs,
        w: Option<String>,
        /// Row-major integer matrix as JSON, e.g. [[1,0],[0,1]]; entries are reduced mod p.
        #[arg(long, conflicts_with = "w")]
        matrix: Option<String>,
        /// Classify a random invertible matrix drawn with --seed.
        #[arg(long, conflicts_with_all = ["w", "matrix"])]
        random: bool,
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Per-stratum point counts of GL_n(F_q) for each Frobenius exponent.
    Census {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, default_value_t = 2)]
        q: u64,
        /// Comma-separated exponents; defaults to --m.
        #[arg(long)]
        ms: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Length-2 smoothness verdicts from the signature (r, s).
    ClosedForm { r: usize, s: usize },
}

#[derive(Args)]
struct DatumArgs {
    /// GL_n with the parabolic of signature (R, N - R).
    #[arg(long, num_args = 2, value_names = ["N", "R"], required_unless_present = "cartan")]
    gl: Option<Vec<usize>>,
    /// JSON datum file: {"cartan": [[..]], "I": [..], "lattice"?: .., "sigma"?: ..} or {"gl": {"n": .., "r": ..}}.
    #[arg(long, conflicts_with = "gl")]
    cartan: Option<PathBuf>,
    /// "id", "flip" or a 1-based permutation of the simple roots such as "3,2,1".
    #[arg(long)]
    sigma: Option<String>,
    /// Frobenius exponent; the datum uses σ^m.
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Input(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_budget() => 3,
            CliError::Lib(Error::Internal(_)) => 1,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Input(s) => write!(f, "{s}"),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

impl DatumArgs {
    fn doc(&self) -> CliResult<ZipDatumDoc> {
        let mut doc = match (&self.gl, &self.cartan) {
            (Some(v), _) => ZipDatumDoc::Gl { gl: GlSpec { n: v[0], r: v[1] }, sigma: SigmaSpec::default() },
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
                serde_json::from_str(&text).map_err(|e| input(format!("{}: {e}", path.display())))?
            }
            (None, None) => return Err(input("one of --gl or --cartan is required")),
        };
        if let Some(text) = &self.sigma {
            let spec = SigmaSpec::parse(text)?;
            match &mut doc {
                ZipDatumDoc::Gl { sigma, .. } | ZipDatumDoc::Generic { sigma, .. } => *sigma = spec,
            }
        }
        Ok(doc)
    }

    fn build(&self) -> CliResult<ZipDatum> {
        Ok(self.doc()?.build(self.m, self.budget)?)
    }
}

fn parse_element(zd: &ZipDatum, text: &str) -> CliResult<WeylElement> {
    let alias = match text.trim() {
        "w1" => Some(0),
        "w2" => Some(1),
        "wprime" | "w'" => Some(2),
        _ => None,
    };
    if let Some(k) = alias {
        let (r, s) = zd.gl_signature().ok_or_else(|| input(format!("alias {text:?} needs --gl with sigma = id")))?;
        if r < s {
            return Err(input(format!("alias {text:?} needs r >= s")));
        }
        let (w1, w2, wp) = Signature::new(r, s)?.length2_elements(zd)?;
        return Ok([w1, w2, wp][k].clone());
    }
    Ok(zd.weyl().parse(text).map_err(Error::from)?)
}

fn parse_ints(text: &str) -> CliResult<Vec<i64>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|e| input(format!("{s:?}: {e}"))))
        .collect()
}

fn emit_json<T: Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value).map_err(input)
}

fn csv_string(header: &[&str], rows: Vec<Vec<String>>) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(input)?;
    for row in rows {
        w.write_record(&row).map_err(input)?;
    }
    String::from_utf8(w.into_inner().map_err(input)?).map_err(input)
}

#[derive(Debug, Serialize, Deserialize)]
struct StratumNode {
    w: String,
    length: u32,
    #[serde(rename = "I_w")]
    i_w: SimpleSet,
    small: bool,
    /// None when σ ≠ id.
    hasse_at_zero: Option<bool>,
}

#[derive(Debug, Serialize, Deserialize)]
struct StrataList {
    #[serde(rename = "I")]
    i: SimpleSet,
    z: String,
    nodes: Vec<StratumNode>,
    /// (lower, upper) cover relations of the closure order.
    edges: Vec<(String, String)>,
}

fn strata_list(zd: &ZipDatum) -> CliResult<StrataList> {
    let strata = zd.strata()?;
    let zero = vec![0; zd.lattice().dim];
    let mut nodes = Vec::with_capacity(strata.len());
    let mut edges = Vec::new();
    for w in &strata {
        let hasse = match hasse_feasible(zd, w, &zero) {
            Ok(out) => Some(out.is_feasible()),
            Err(Error::Unsupported(_)) => None,
            Err(e) => return Err(e.into()),
        };
        nodes.push(StratumNode {
            w: zd.display(w),
            length: zd.weyl().length(w),
            i_w: zd.canonical_type(w)?,
            small: is_small(zd, w)?,
            hasse_at_zero: hasse,
        });
        for v in zd.lower_neighbors(zd.i(), w)? {
            edges.push((zd.display(&v), zd.display(w)));
        }
    }
    Ok(StrataList { i: zd.i(), z: zd.display(zd.z()), nodes, edges })
}

fn set_label(k: SimpleSet) -> String {
    format!("{{{}}}", k.one_based().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
}

fn strata_dot(list: &StrataList) -> String {
    let mut out = String::from("digraph strata {\n  rankdir=BT;\n  node [shape=box];\n");
    for node in &list.nodes {
        let hasse = match node.hasse_at_zero {
            Some(true) => "hasse",
            Some(false) => "no hasse",
            None => "hasse n/a",
        };
        out.push_str(&format!(
            "  \"{}\" [label=\"{}\\nl={} I_w={}\\n{}, {}\"];\n",
            node.w,
            node.w,
            node.length,
            set_label(node.i_w),
            if node.small { "small" } else { "not small" },
            hasse
        ));
    }
    for (lo, hi) in &list.edges {
        out.push_str(&format!("  \"{lo}\" -> \"{hi}\";\n"));
    }
    out.push_str("}\n");
    out
}

fn cmd_strata_list(datum: &DatumArgs, format: Format) -> CliResult<String> {
    let zd = datum.build()?;
    let list = strata_list(&zd)?;
    match format {
        Format::Json => emit_json(&list),
        Format::Dot => Ok(strata_dot(&list)),
        Format::Csv => csv_string(
            &["w", "length", "I_w", "small", "hasse_at_zero"],
            list.nodes
                .iter()
                .map(|n| {
                    vec![
                        n.w.clone(),
                        n.length.to_string(),
                        set_label(n.i_w),
                        n.small.to_string(),
                        n.hasse_at_zero.map_or("".into(), |b| b.to_string()),
                    ]
                })
                .collect(),
        ),
    }
}

fn cmd_decide(datum: &DatumArgs, w: &str, w_prime: &str) -> CliResult<String> {
    let zd = datum.build()?;
    let w = parse_element(&zd, w)?;
    let wp = parse_element(&zd, w_prime)?;
    emit_json(&decide_smooth(&zd, &w, &wp)?.report(&zd))
}

#[derive(Debug, Serialize, Deserialize)]
struct SweepRow {
    #[serde(flatten)]
    closed: zipstrata::glnzip::Length2Report,
    u1_bounded: bool,
    u1_smooth: bool,
    u2_bounded: bool,
    u2_smooth: bool,
    agrees: bool,
}

fn cmd_sweep(max_n: usize, budget: u64, format: Format) -> CliResult<String> {
    let mut rows = Vec::new();
    for n in 4..=max_n {
        for s in 2..=n / 2 {
            let check = length2_cross_check(Signature::new(n - s, s)?, budget)?;
            rows.push(SweepRow {
                agrees: check.agrees(),
                u1_bounded: check.u1.bounded,
                u1_smooth: check.u1.smooth,
                u2_bounded: check.u2.bounded,
                u2_smooth: check.u2.smooth,
                closed: check.report,
            });
        }
    }
    match format {
        Format::Json => emit_json(&rows),
        Format::Dot => Err(input("sweep-length2 has no DOT output")),
        Format::Csv => csv_string(
            &[
                "r",
                "s",
                "gcd",
                "m",
                "closed_u1",
                "closed_u2",
                "u1_bounded",
                "u1_smooth",
                "u2_bounded",
                "u2_smooth",
                "agrees",
            ],
            rows.iter()
                .map(|x| {
                    let verdict =
                        |v| serde_json::to_value(v).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
                    vec![
                        x.closed.r.to_string(),
                        x.closed.s.to_string(),
                        x.closed.gcd.to_string(),
                        x.closed.m.map_or("".into(), |m| m.to_string()),
                        verdict(x.closed.u1),
                        verdict(x.closed.u2),
                        x.u1_bounded.to_string(),
                        x.u1_smooth.to_string(),
                        x.u2_bounded.to_string(),
                        x.u2_smooth.to_string(),
                        x.agrees.to_string(),
                    ]
                })
                .collect(),
        ),
    }
}

fn cmd_hasse(datum: &DatumArgs, w: &str, lambda: Option<&str>) -> CliResult<String> {
    let zd = datum.build()?;
    let w = parse_element(&zd, w)?;
    if let Some(text) = lambda {
        let lambda = parse_ints(text)?;
        if lambda.len() != zd.lattice().dim {
            return Err(input(format!("lambda needs {} coordinates", zd.lattice().dim)));
        }
        return emit_json(&hasse_report(&zd, &w, &lambda)?);
    }
    let e = e_w_set(&zd, &w)?;
    let found = hasse_any_lweight(&zd, &w)?;
    let report = HasseReport {
        w: zd.display(&w),
        e_w: e.iter().map(|&a| zd.rs().root_label(a)).collect(),
        lambda: found.as_ref().map(|(l, _)| l.clone()).unwrap_or_default(),
        feasible: found.is_some(),
        witness: found.as_ref().map(|(_, x)| x.scaled.clone()),
        multiplier: found.as_ref().map(|(_, x)| x.multiplier),
    };
    emit_json(&report)
}

#[derive(Debug, Serialize, Deserialize)]
struct XiReport {
    input: String,
    xi: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<String>>>,
}

fn parse_matrix<F: FiniteField>(text: &str) -> CliResult<Matrix<F>> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(text).map_err(|e| input(format!("matrix: {e}")))?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(input("matrix must be square"));
    }
    Ok(Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(F::from_int).collect()).collect()))
}

fn xi_matrix<F: FiniteField>(zd: &ZipDatum, matrix: Option<&str>, seed: u64, m: u32) -> CliResult<XiReport> {
    let n = zd.weyl().rank() + 1;
    let f: Matrix<F> = match matrix {
        Some(text) => parse_matrix(text)?,
        None => random_invertible(n, &mut ChaCha8Rng::seed_from_u64(seed)),
    };
    if f.rows() != n {
        return Err(input(format!("matrix must be {n}x{n}")));
    }
    let xi = xi_classify(zd, &f, m)?;
    let entries = (0..n).map(|i| (0..n).map(|j| f[(i, j)].to_string()).collect()).collect();
    Ok(XiReport { input: "matrix".into(), xi: zd.display(&xi), matrix: Some(entries) })
}

macro_rules! dispatch_q {
    ($q:expr, $f:ident, $($arg:expr),*) => {
        match $q {
            2 => $f::<F2>($($arg),*),
            3 => $f::<F3>($($arg),*),
            4 => $f::<F4>($($arg),*),
            5 => $f::<F5>($($arg),*),
            7 => $f::<F7>($($arg),*),
            8 => $f::<F8>($($arg),*),
            9 => $f::<F9>($($arg),*),
            q => Err(input(format!("q = {q} is not supported; use one of 2, 3, 4, 5, 7, 8, 9"))),
        }
    };
}

fn cmd_xi(
    datum: &DatumArgs,
    w: Option<&str>,
    matrix: Option<&str>,
    random: bool,
    q: u64,
    seed: u64,
) -> CliResult<String> {
    let zd = datum.build()?;
    let report = match (w, matrix, random) {
        (Some(text), _, _) => {
            let x = parse_element(&zd, text)?;
            XiReport { input: zd.display(&x), xi: zd.display(&xi_of_weyl(&zd, &x)?), matrix: None }
        }
        (None, Some(_), _) | (None, None, true) => dispatch_q!(q, xi_matrix, &zd, matrix, seed, datum.m)?,
        (None, None, false) => return Err(input("give an element, --matrix or --random")),
    };
    emit_json(&report)
}

fn census<F: FiniteField>(zd: &ZipDatum, ms: &[u32], budget: u64) -> CliResult<zipstrata::glnzip::Census> {
    Ok(fp_point_census::<F>(zd, ms, budget)?)
}

fn cmd_census(datum: &DatumArgs, q: u64, ms: Option<&str>, format: Format) -> CliResult<String> {
    let zd = datum.build()?;
    let ms: Vec<u32> = match ms {
        Some(text) => parse_ints(text)?
            .into_iter()
            .map(|m| u32::try_from(m).map_err(|_| input(format!("exponent {m} must be non-negative"))))
            .collect::<CliResult<_>>()?,
        None => vec![datum.m],
    };
    let c = dispatch_q!(q, census, &zd, &ms, datum.budget)?;
    match format {
        Format::Json => emit_json(&c),
        Format::Dot => Err(input("census has no DOT output")),
        Format::Csv => {
            let header: Vec<String> =
                std::iter::once("w".to_string()).chain(c.exponents.iter().map(|m| format!("m={m}"))).collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            csv_string(
                &header,
                c.rows
                    .iter()
                    .map(|(w, counts)| std::iter::once(w.clone()).chain(counts.iter().map(u64::to_string)).collect())
                    .collect(),
            )
        }
    }
}

fn cmd_closed_form(r: usize, s: usize) -> CliResult<String> {
    emit_json(&length2_closed_form(Signature::new(r, s)?)?)
}

fn run(cli: Cli) -> CliResult<String> {
    match &cli.command {
        Command::StrataList { datum, format } => cmd_strata_list(datum, *format),
        Command::Decide { datum, w, w_prime } => cmd_decide(datum, w, w_prime),
        Command::SweepLength2 { max_n, budget, format } => cmd_sweep(*max_n, *budget, *format),
        Command::Hasse { datum, w, lambda } => cmd_hasse(datum, w, lambda.as_deref()),
        Command::Xi { datum, w, matrix, random, q, seed } => {
            cmd_xi(datum, w.as_deref(), matrix.as_deref(), *random, *q, *seed)
        }
        Command::Census { datum, q, ms, format } => cmd_census(datum, *q, ms.as_deref(), *format),
        Command::ClosedForm { r, s } => cmd_closed_form(*r, *s),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            let _ = writeln!(out, "{}", text.trim_end());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
