//! `locoh`: graded components of top local cohomology from the command line.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use locoh_core::cohomology::char_rows_to_csv;
use locoh_core::parse::infer_arity;
use locoh_core::*;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "locoh", version, about = "Graded components of top local cohomology modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the presentation matrix M(f; d)
    Present {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Tabulate lengths of H^s_(R+)(R)_(-d) over a degree range
    Hilbert {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Decide vanishing by the cokernel and by the content ideal
    Vanish {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        range: RangeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Test whether the table is a polynomial in r = -d
    Fit {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        range: RangeArgs,
        /// Interpolation window: the fit goes through window + 1 rows
        #[arg(long, default_value_t = 6)]
        window: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare the Singh example over Q and over F_p
    Compare {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        dmin: u32,
        #[arg(long, default_value_t = 8)]
        dmax: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Determinants of the tridiagonal matrices Δ_1 .. Δ_n
    Tridiag {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Content ideal of I: generators, unit test, finite colength test
    Content {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct RingArgs {
    /// Generators separated by ',' or ';'
    #[arg(long, conflicts_with = "builtin", allow_hyphen_values = true)]
    ideal: Option<String>,
    /// singh, section3 or remark16
    #[arg(long)]
    builtin: Option<Builtin>,
    /// Number of U-variables (inferred from the ideal when omitted)
    #[arg(long)]
    s: Option<usize>,
    /// Number of X-variables (inferred from the ideal when omitted)
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum)]
    field: Option<Field>,
    /// Prime for --field p (implies it when --field is omitted)
    #[arg(long)]
    p: Option<u64>,
}

#[derive(Args, Debug)]
struct RangeArgs {
    /// Single degree; shorthand for --dmin d --dmax d
    #[arg(long, conflicts_with_all = ["dmin", "dmax"])]
    d: Option<u32>,
    /// Defaults to s
    #[arg(long)]
    dmin: Option<u32>,
    /// Defaults to dmin
    #[arg(long)]
    dmax: Option<u32>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Field {
    Q,
    Z,
    P,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    NotFinite(String),
    Theorem(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::NotFinite(_) => 3,
            Failure::Theorem(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::NotFinite(m) | Failure::Theorem(m) => m,
        }
    }
}

impl From<CohomologyError> for Failure {
    fn from(e: CohomologyError) -> Self {
        match e {
            CohomologyError::NotFiniteLength { .. } => Failure::NotFinite(e.to_string()),
            CohomologyError::TheoremViolation(_) | CohomologyError::RouteDisagreement { .. } => {
                Failure::Theorem(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

macro_rules! input_err {
    ($($t:tt)*) => { Failure::Input(format!($($t)*)) };
}

struct Input {
    ideal: GradedIdeal,
    builtin: Option<Builtin>,
}

impl RingArgs {
    fn base(&self) -> Result<ScalarDomain, Failure> {
        let field = self.field.unwrap_or(if self.p.is_some() { Field::P } else { Field::Q });
        match (field, self.p) {
            (Field::Q, None) => Ok(ScalarDomain::Rationals),
            (Field::Z, None) => Ok(ScalarDomain::Integers),
            (Field::P, Some(p)) => ScalarDomain::prime_field(p).map_err(|e| input_err!("--p: {e}")),
            (Field::P, None) => Err(input_err!("--field p needs --p")),
            (_, Some(_)) => Err(input_err!("--p only applies to --field p")),
        }
    }

    fn load(&self) -> Result<Input, Failure> {
        let base = self.base()?;
        let (builtin, text, m_min, s_min) = match (&self.builtin, &self.ideal) {
            (Some(b), _) => {
                let (m, s, text) = b.definition();
                (Some(*b), text.to_string(), m, s)
            }
            (None, Some(text)) => {
                let (m, s) = infer_arity(text).map_err(|e| input_err!("--ideal: {e}"))?;
                (None, text.clone(), m, s)
            }
            (None, None) => return Err(input_err!("give --ideal or --builtin")),
        };
        let m = self.m.unwrap_or(m_min);
        let s = self.s.unwrap_or(s_min);
        if m < m_min || s < s_min {
            return Err(input_err!("the ideal uses {m_min} X-variables and {s_min} U-variables; got --m {m} --s {s}"));
        }
        if builtin.is_some() && (m, s) != (m_min, s_min) {
            return Err(input_err!("--builtin fixes m = {m_min}, s = {s_min}"));
        }
        if s == 0 {
            return Err(input_err!("need at least one U-variable (--s)"));
        }
        let ring = CoefficientRing::new(base, m);
        let gens = parse_generators(&text, ring, s).map_err(|e| input_err!("--ideal: {e}"))?;
        let ideal = GradedIdeal::new(ring, s, gens).map_err(|e| input_err!("--ideal: {e}"))?;
        Ok(Input { ideal, builtin })
    }

    /// remark16 only serves the content-ideal commands.
    fn load_for_cohomology(&self) -> Result<Input, Failure> {
        let input = self.load()?;
        if input.builtin == Some(Builtin::Remark16) {
            return Err(input_err!("remark16 is available for 'content' and 'present' only"));
        }
        Ok(input)
    }
}

impl RangeArgs {
    fn resolve(&self, s: usize) -> (u32, u32) {
        if let Some(d) = self.d {
            return (d, d);
        }
        let dmin = self.dmin.unwrap_or(s as u32);
        (dmin, self.dmax.unwrap_or(dmin))
    }
}

fn emit(out: &OutputArgs, text: String) -> Result<(), Failure> {
    match &out.output {
        Some(path) => fs::write(path, text).map_err(|e| input_err!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_present(ring: &RingArgs, d: u32, out: &OutputArgs) -> Result<(), Failure> {
    let input = ring.load()?;
    let pm = presentation_matrix(&input.ideal, d).map_err(|e| input_err!("{e}"))?;
    let m = pm.matrix();
    let cells: Vec<Vec<String>> =
        (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect()).collect();
    let text = match out.format {
        Format::Json => pretty(&pm.to_json()),
        Format::Csv => cells.iter().map(|row| row.join(",") + "\n").collect(),
        Format::Table => {
            let widths: Vec<usize> =
                (0..m.cols()).map(|c| cells.iter().map(|row| row[c].len()).max().unwrap_or(0)).collect();
            let mut s = format!("M(f; {d}): {} x {} over {}\n", m.rows(), m.cols(), m.ring());
            for row in &cells {
                let padded: Vec<String> = row.iter().zip(&widths).map(|(e, &w)| format!("{e:<w$}")).collect();
                s.push_str(&format!("[{}]\n", padded.join(", ").trim_end()));
            }
            s
        }
    };
    emit(out, text)
}

fn cmd_hilbert(ring: &RingArgs, range: &RangeArgs, out: &OutputArgs) -> Result<(), Failure> {
    let input = ring.load_for_cohomology()?;
    let (dmin, dmax) = range.resolve(input.ideal.s());
    let table = hilbert_table(&CohomologyQuery::new(input.ideal, dmin, dmax)?);
    let text = match out.format {
        Format::Json => pretty(&table.to_json()),
        Format::Csv => table.to_csv(),
        Format::Table => table.to_string(),
    };
    emit(out, text)?;
    match table.first_error() {
        Some(e) => Err(e.clone().into()),
        None => Ok(()),
    }
}

fn cmd_vanish(ring: &RingArgs, range: &RangeArgs, out: &OutputArgs) -> Result<(), Failure> {
    let input = ring.load_for_cohomology()?;
    let (dmin, dmax) = range.resolve(input.ideal.s());
    let (verdict, rows) = gap_free_check(&CohomologyQuery::new(input.ideal, dmin, dmax)?)?;
    let text = match out.format {
        Format::Json => pretty(&json!({ "verdict": verdict, "rows": rows })),
        Format::Csv => {
            let mut s = String::from("d,cokernel_zero,content_unit\n");
            for v in &rows {
                s.push_str(&format!("{},{},{}\n", v.d, v.route_a, v.route_b));
            }
            s
        }
        Format::Table => {
            let mut s = format!("{:>4}  {:>13}  {:>12}\n", "d", "cokernel zero", "content unit");
            for v in &rows {
                s.push_str(&format!("{:>4}  {:>13}  {:>12}\n", v.d, yes_no(v.route_a), yes_no(v.route_b)));
            }
            s.push_str(match verdict {
                GapFree::AllVanish => "every component in the range vanishes\n",
                GapFree::NoneVanish => "no component in the range vanishes\n",
            });
            s
        }
    };
    emit(out, text)
}

fn cmd_fit(ring: &RingArgs, range: &RangeArgs, window: usize, out: &OutputArgs) -> Result<(), Failure> {
    let input = ring.load_for_cohomology()?;
    let (dmin, dmax) = range.resolve(input.ideal.s());
    let table = hilbert_table(&CohomologyQuery::new(input.ideal, dmin, dmax)?);
    let values = table.values()?;
    let fit = fit_reverse_polynomial(&values, window)?;
    let verdict = match &fit {
        Fit::Polynomial { .. } => "reverse polynomial type",
        Fit::Refutation { .. } => "NOT reverse polynomial type",
    };
    let text = match out.format {
        Format::Json => {
            let mut v = serde_json::to_value(&fit).expect("fit serializes");
            v["verdict"] = json!(verdict);
            v["values"] = json!(values);
            pretty(&v)
        }
        Format::Csv => {
            let (first, last) = match &fit {
                Fit::Polynomial { polynomial, .. } => (polynomial, None),
                Fit::Refutation { first, last } => (&first.polynomial, Some(&last.polynomial)),
            };
            let mut s = String::from("d,value,first_fit,last_fit\n");
            for &(d, v) in &values {
                let l = last.map(|p| p.at_degree(d).to_string()).unwrap_or_default();
                s.push_str(&format!("{d},{v},{},{l}\n", first.at_degree(d)));
            }
            s
        }
        Format::Table => {
            let mut s = format!("{verdict} on d = {dmin}..{dmax} (r = -d, window {window})\n");
            match &fit {
                Fit::Polynomial { polynomial, rows, .. } => {
                    s.push_str(&format!("  P(r) = {polynomial}\n  matches all {rows} rows\n"));
                }
                Fit::Refutation { first, last } => {
                    for i in [first, last] {
                        s.push_str(&format!(
                            "  through d = {}..{}: P(r) = {}\n    at d = {} predicts {}, table has {}\n",
                            i.from_d, i.to_d, i.polynomial, i.conflict_d, i.predicted, i.table_value
                        ));
                    }
                }
            }
            s
        }
    };
    emit(out, text)
}

fn cmd_compare(p: u64, dmin: u32, dmax: u32, out: &OutputArgs) -> Result<(), Failure> {
    let rows = char_comparison(p, dmin, dmax)?;
    let text = match out.format {
        Format::Json => pretty(&json!({ "p": p, "rows": rows })),
        Format::Csv => char_rows_to_csv(&rows),
        Format::Table => {
            let mut s = format!("Singh example: h_0 over Q, h_p over F_{p}\n");
            s.push_str(&format!("{:>4}  {:>8}  {:>8}  {:>5}  {:>12}\n", "d", "h_0", "h_p", "equal", "p in Pi(d-2)"));
            for r in &rows {
                s.push_str(&format!(
                    "{:>4}  {:>8}  {:>8}  {:>5}  {:>12}\n",
                    r.d,
                    r.h0,
                    r.hp,
                    yes_no(r.equal),
                    yes_no(r.p_in_pi)
                ));
            }
            s
        }
    };
    emit(out, text)
}

fn cmd_tridiag(n: u32, out: &OutputArgs) -> Result<(), Failure> {
    let mut rows = Vec::new();
    for k in 1..=n {
        let det = tridiag_det(k)?;
        let direct = tridiag_matrix(k as usize).determinant().ok().map(|v| v.to_integer());
        if direct.as_ref() != Some(&det) {
            return Err(Failure::Theorem(format!("Δ_{k}: recurrence gives {det}, elimination gives {direct:?}")));
        }
        rows.push((k, det));
    }
    let text = match out.format {
        Format::Json => {
            let rows: Vec<Value> = rows.iter().map(|(k, det)| json!({ "n": k, "det": det.to_string() })).collect();
            pretty(&json!({ "rows": rows }))
        }
        Format::Csv => {
            std::iter::once("n,det\n".to_string()).chain(rows.iter().map(|(k, d)| format!("{k},{d}\n"))).collect()
        }
        Format::Table => {
            let w = rows.iter().map(|(_, d)| d.to_string().len()).max().unwrap_or(1).max(3);
            std::iter::once(format!("{:>4}  {:>w$}\n", "n", "det"))
                .chain(rows.iter().map(|(k, d)| format!("{k:>4}  {:>w$}\n", d.to_string())))
                .collect()
        }
    };
    emit(out, text)
}

fn cmd_content(ring: &RingArgs, out: &OutputArgs) -> Result<(), Failure> {
    let input = ring.load()?;
    let r0 = input.ideal.ring();
    let content = input.ideal.content_ideal();
    let is_unit = is_unit_ideal(r0, &content).map_err(|e| input_err!("{e}"))?;
    let is_cofinite = if r0.x_vars == 0 {
        match r0.base {
            // Z/(g) is finite iff g ≠ 0
            ScalarDomain::Integers => content.iter().any(|c| !c.is_zero()),
            _ => true,
        }
    } else {
        is_cofinite(r0, &content).map_err(|e| input_err!("{e}"))?
    };
    let primes = minimal_primes_report(&input.ideal)?;
    let gens: Vec<String> = content.iter().map(ToString::to_string).collect();
    let text = match out.format {
        Format::Json => pretty(&json!({
            "ring": r0.to_string(),
            "generators": gens,
            "isUnit": is_unit,
            "isCofinite": is_cofinite,
            "supportIdeal": primes.generators,
        })),
        Format::Csv => {
            let mut s = String::from("generator\n");
            for g in &gens {
                s.push_str(&format!("{g}\n"));
            }
            s
        }
        Format::Table => format!(
            "content(I) = ({})\nunit ideal: {}\nfinite colength: {}\ncontent(I)R + R_+ = ({})\n",
            gens.join(", "),
            yes_no(is_unit),
            yes_no(is_cofinite),
            primes.generators.join(", ")
        ),
    };
    emit(out, text)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Present { ring, d, out } => cmd_present(&ring, d, &out),
        Command::Hilbert { ring, range, out } => cmd_hilbert(&ring, &range, &out),
        Command::Vanish { ring, range, out } => cmd_vanish(&ring, &range, &out),
        Command::Fit { ring, range, window, out } => cmd_fit(&ring, &range, window, &out),
        Command::Compare { p, dmin, dmax, out } => cmd_compare(p, dmin, dmax, &out),
        Command::Tridiag { n, out } => cmd_tridiag(n, &out),
        Command::Content { ring, out } => cmd_content(&ring, &out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
