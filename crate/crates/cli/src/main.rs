use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use maxarc::arcs::{
    denniston_arc, dual_arc, exponent_family_subgroup, extend_by_conic, mathon_arc, mathon_exponent_conics,
    verify_maximal_arc, AdditiveSubgroup, ArcStats, MaximalArc,
};
use maxarc::census::{self, formulas};
use maxarc::cert::{parse_point_list, points_csv, Certificate};
use maxarc::collineation::{are_isomorphic, automorphism_order, reference_conic};
use maxarc::field::Relation;
use maxarc::{Conic, Elem, Field, GeneralConic, Plane};

const EXIT_USAGE: u8 = 2;
const EXIT_VERIFY: u8 = 3;
const EXIT_GOLDEN: u8 = 4;

#[derive(Parser)]
#[command(name = "maxarc", version, about = "Construct, verify and classify maximal arcs in PG(2, 2^h)")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for parallel stages.
    #[arg(long, global = true, env = "MAXARC_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Extension degree: the field is GF(2^h).
    #[arg(long)]
    h: u32,
    /// Irreducible modulus as hex bits, e.g. 0x25.
    #[arg(long)]
    irreducible: Option<String>,
    /// Relation singling out the generator, e.g. "w^18+w+1".
    #[arg(long)]
    relation: Option<String>,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Write the result here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Skip the line-count verification of the constructed arc.
    #[arg(long)]
    no_verify: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Describe the selected field.
    FieldInfo(FieldArgs),
    /// Build an arc and write its certificate.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Check that a certificate or point list is a maximal arc.
    Verify {
        input: PathBuf,
        /// Field for a bare point list (certificates carry their own).
        #[arg(long)]
        h: Option<u32>,
        #[arg(long)]
        irreducible: Option<String>,
        #[arg(long)]
        relation: Option<String>,
    },
    /// Order of the collineation stabilizer of an arc.
    Aut { input: PathBuf },
    /// Decide whether two arcs are projectively equivalent.
    Isomorphic { first: PathBuf, second: PathBuf },
    /// Counts and classifications.
    Census {
        #[command(subcommand)]
        kind: CensusKind,
    },
    /// Recompute the PG(2,32) tables and compare them with the expected values.
    ReproducePg32,
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Conics of one pencil indexed by an additive subgroup.
    Denniston {
        #[command(flatten)]
        field: FieldArgs,
        /// Elements of the subgroup, comma separated (0 may be omitted).
        #[arg(long)]
        subgroup: String,
        /// Pencil parameter alpha (needs trace 1); defaults to the smallest valid one.
        #[arg(long)]
        alpha: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// A closed set of conics given as alpha,beta,lambda triples separated by ';'.
    MathonSet {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        conics: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The exponent family x^2+xy+(w^k+w^l λ+w^m λ^3)y^2+λz^2 over a subgroup.
    MathonExp {
        #[command(flatten)]
        field: FieldArgs,
        /// Exponents k,l,m.
        #[arg(long)]
        klm: String,
        /// Subgroup for λ; defaults to <1, w, w^9>.
        #[arg(long)]
        subgroup: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Double the degree of an arc with a disjoint conic on the same nucleus.
    Extend {
        #[arg(long)]
        cert: PathBuf,
        /// Conic as alpha,beta,lambda (nucleus (0,0,1)).
        #[arg(long, conflicts_with = "general")]
        conic: Option<String>,
        /// Conic as a,b,c,d,e,f for ax^2+by^2+cz^2+dxy+eyz+fxz.
        #[arg(long)]
        general: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The dual arc formed by the external lines.
    Dual {
        #[arg(long)]
        cert: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Subcommand)]
enum CensusKind {
    /// Degree-4 Denniston arcs in the standard pencil and their classes.
    Denniston4(FieldArgs),
    /// Classes of proper Mathon 8-arcs.
    Mathon8 {
        #[command(flatten)]
        field: FieldArgs,
        /// Allow fields larger than GF(32).
        #[arg(long)]
        force: bool,
        /// Skip point-set verification of each enumerated arc.
        #[arg(long)]
        no_verify: bool,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Verify(String),
    Golden(String),
}

impl From<maxarc::Error> for CliError {
    fn from(e: maxarc::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: could not size the thread pool: {e}");
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Verify(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(EXIT_VERIFY)
        }
        Err(CliError::Golden(m)) => {
            eprintln!("golden mismatch: {m}");
            ExitCode::from(EXIT_GOLDEN)
        }
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    let fmt = cli.format;
    match &cli.command {
        Command::FieldInfo(fa) => field_info(&build_field(fa)?, fmt),
        Command::Construct { kind } => construct(kind, fmt),
        Command::Verify { input, h, irreducible, relation } => {
            let fa = h.map(|h| FieldArgs { h, irreducible: irreducible.clone(), relation: relation.clone() });
            verify(input, fa.as_ref(), fmt)
        }
        Command::Aut { input } => aut(input, fmt),
        Command::Isomorphic { first, second } => isomorphic(first, second, fmt),
        Command::Census { kind } => census_cmd(kind, fmt),
        Command::ReproducePg32 => reproduce(fmt),
    }
}

fn build_field(fa: &FieldArgs) -> CliResult<Field> {
    let f = match &fa.irreducible {
        Some(m) => {
            let bits = u64::from_str_radix(m.trim_start_matches("0x"), 16)
                .map_err(|_| usage(format!("invalid modulus {m:?}")))?;
            Field::with_modulus(fa.h, bits)?
        }
        None => Field::new(fa.h)?,
    };
    match &fa.relation {
        Some(r) => {
            let rel = Relation::parse(r)?;
            let w = f.find_generator_with_relation(&rel)?;
            Ok(f.with_generator(w)?)
        }
        None => Ok(f),
    }
}

fn plane_of(f: &Field) -> CliResult<Plane> {
    Ok(Plane::new(f.clone())?)
}

fn emit(text: &str, output: Option<&Path>) -> CliResult<()> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_arc(path: &Path) -> CliResult<MaximalArc> {
    let cert = Certificate::from_json(&read(path)?)?;
    let plane = cert.plane()?;
    Ok(cert.to_arc(&plane)?)
}

fn field_info(f: &Field, fmt: Format) -> CliResult<()> {
    let e = f.degree();
    let spec = f.spec();
    let value = serde_json::json!({
        "schema": maxarc::cert::SCHEMA,
        "field": spec,
        "order": f.order(),
        "trace_of_one": f.trace(Elem::ONE),
        "reference_conic": reference_conic(f).display(f),
        "pencil_4arcs": formulas::pencil_4arcs(e),
        "denniston4_classes_formula": formulas::denniston4_classes(e),
        "mathon8_classes_formula": formulas::mathon8_classes(e),
    });
    match fmt {
        Format::Json => emit(&json(&value), None),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "GF(2^{e}), q = {}", f.order());
            let _ = writeln!(s, "modulus {}  generator w = {}", spec.irreducible_bits_hex, spec.generator_bits_hex);
            let _ = writeln!(s, "Tr(1) = {}", f.trace(Elem::ONE));
            let _ = writeln!(s, "reference conic {}", reference_conic(f).display(f));
            let _ = writeln!(s, "degree-4 arcs in the standard pencil: {}", formulas::pencil_4arcs(e));
            if let Some(n) = formulas::denniston4_classes(e) {
                let _ = writeln!(s, "degree-4 Denniston classes (formula): {n}");
            }
            if let Some(n) = formulas::mathon8_classes(e) {
                let _ = writeln!(s, "proper Mathon 8-arc classes (formula): {n}");
            }
            emit(&s, None)
        }
    }
}

fn parse_elements(f: &Field, s: &str) -> CliResult<Vec<Elem>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(|t| Ok(f.parse(t.trim())?)).collect()
}

fn parse_subgroup(f: &Field, s: &str) -> CliResult<AdditiveSubgroup> {
    Ok(AdditiveSubgroup::from_elements(f, &parse_elements(f, s)?)?)
}

fn finish_construct(arc: MaximalArc, construction: &str, out: &OutputArgs, fmt: Format) -> CliResult<()> {
    let plane = arc.plane().clone();
    let stats = if out.no_verify {
        None
    } else {
        Some(verify_maximal_arc(&plane, arc.points()).map_err(|d| CliError::Verify(d.to_string()))?)
    };
    eprintln!("constructed {construction}: degree {}, {} points", arc.degree(), arc.len());
    let text = match fmt {
        Format::Csv => points_csv(&plane, arc.points()),
        _ => Certificate::from_arc(&arc, construction, stats).to_json(),
    };
    emit(&text, out.output.as_deref())
}

fn construct(kind: &ConstructKind, fmt: Format) -> CliResult<()> {
    match kind {
        ConstructKind::Denniston { field, subgroup, alpha, out } => {
            let f = build_field(field)?;
            let plane = plane_of(&f)?;
            let a = parse_subgroup(&f, subgroup)?;
            let alpha = match alpha {
                Some(s) => f.parse(s)?,
                None => reference_conic(&f).alpha,
            };
            let arc = denniston_arc(&plane, alpha, &a)?;
            finish_construct(arc, &format!("denniston alpha={} A=<{}>", f.format(alpha), fmt_list(&f, a.basis())), out, fmt)
        }
        ConstructKind::MathonSet { field, conics, out } => {
            let f = build_field(field)?;
            let plane = plane_of(&f)?;
            let list: Vec<Conic> = conics
                .split(';')
                .filter(|t| !t.trim().is_empty())
                .map(|t| Conic::parse(&f, t.trim()))
                .collect::<Result<_, _>>()?;
            let arc = mathon_arc(&plane, &list)?;
            finish_construct(arc, "mathon closed set", out, fmt)
        }
        ConstructKind::MathonExp { field, klm, subgroup, out } => {
            let f = build_field(field)?;
            let plane = plane_of(&f)?;
            let e: Vec<i64> = klm
                .split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|_| usage(format!("invalid exponent triple {klm:?}"))))
                .collect::<CliResult<_>>()?;
            let [k, l, m] = e[..] else {
                return Err(usage("--klm takes three exponents"));
            };
            let a = match subgroup {
                Some(s) => parse_subgroup(&f, s)?,
                None => exponent_family_subgroup(&f),
            };
            let arc = mathon_arc(&plane, &mathon_exponent_conics(&f, (k, l, m), &a))?;
            finish_construct(arc, &format!("mathon exponents ({k},{l},{m})"), out, fmt)
        }
        ConstructKind::Extend { cert, conic, general, out } => {
            let arc = load_arc(cert)?;
            let f = arc.field().clone();
            let c = match (conic, general) {
                (Some(s), _) => Conic::parse(&f, s)?.to_general(),
                (None, Some(s)) => {
                    let v = parse_elements(&f, s)?;
                    let coeffs: [Elem; 6] =
                        v.try_into().map_err(|_| usage("--general takes six coefficients"))?;
                    GeneralConic::new(&f, coeffs)?
                }
                (None, None) => return Err(usage("give --conic or --general")),
            };
            let bigger = extend_by_conic(&arc, &c)?;
            finish_construct(bigger, &format!("extension by {}", c.display(&f)), out, fmt)
        }
        ConstructKind::Dual { cert, out } => {
            let arc = load_arc(cert)?;
            let dual = dual_arc(&arc).map_err(|e| CliError::Verify(e.to_string()))?;
            finish_construct(dual, "dual arc (external lines as points)", out, fmt)
        }
    }
}

fn fmt_list(f: &Field, xs: &[Elem]) -> String {
    xs.iter().map(|&x| f.format(x)).collect::<Vec<_>>().join(",")
}

fn stats_text(s: &ArcStats) -> String {
    let hist: Vec<String> = s.histogram.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    format!("maximal arc of degree {} with {} points\nline histogram {}\n", s.degree, s.points, hist.join(" "))
}

fn verify(input: &Path, fa: Option<&FieldArgs>, fmt: Format) -> CliResult<()> {
    let text = read(input)?;
    let (plane, points) = if text.trim_start().starts_with('{') {
        let cert = Certificate::from_json(&text)?;
        let plane = cert.plane()?;
        let pts = cert.point_set(&plane)?;
        (plane, pts)
    } else {
        let fa = fa.ok_or_else(|| usage("a bare point list needs --h"))?;
        let plane = plane_of(&build_field(fa)?)?;
        let pts = parse_point_list(&plane, &text)?;
        (plane, pts)
    };
    if points.is_empty() {
        return Err(usage("no points given"));
    }
    match verify_maximal_arc(&plane, &points) {
        Ok(stats) => {
            let out = match fmt {
                Format::Json => json(&serde_json::json!({ "valid": true, "stats": stats })),
                _ => stats_text(&stats),
            };
            emit(&out, None)
        }
        Err(defect) => {
            if fmt == Format::Json {
                let _ = emit(&json(&serde_json::json!({ "valid": false, "defect": defect.to_string() })), None);
            }
            let witness = match &defect {
                maxarc::arcs::ArcDefect::UnevenLine { line, .. } => format!(" (line {})", plane.format_line(*line)),
                _ => String::new(),
            };
            Err(CliError::Verify(format!("{defect}{witness}")))
        }
    }
}

fn aut(input: &Path, fmt: Format) -> CliResult<()> {
    let arc = load_arc(input)?;
    let report = automorphism_order(&arc)?;
    let out = match fmt {
        Format::Json => json(&report),
        _ => {
            let mut s = format!("automorphism group order {} ({})\n", report.order, report.method);
            if let (Some(p), Some(g), Some(fo)) = (report.field_map_pairs, report.g_a_order, report.formula_order) {
                let _ = writeln!(s, "field maps fixing A: {p}, |G_A| = {g}, (q+1)|G_A| = {fo}");
            }
            s
        }
    };
    emit(&out, None)
}

fn isomorphic(a: &Path, b: &Path, fmt: Format) -> CliResult<()> {
    let (x, y) = (load_arc(a)?, load_arc(b)?);
    let same = are_isomorphic(&x, &y)?;
    let out = match fmt {
        Format::Json => json(&serde_json::json!({ "isomorphic": same })),
        _ => format!("{}\n", if same { "isomorphic" } else { "not isomorphic" }),
    };
    emit(&out, None)
}

fn census_cmd(kind: &CensusKind, fmt: Format) -> CliResult<()> {
    match kind {
        CensusKind::Denniston4(fa) => {
            let f = build_field(fa)?;
            eprintln!("[census] degree-4 arcs over GF(2^{})", f.degree());
            let c = census::classify_denniston4(&f)?;
            eprintln!("[census] {} arcs enumerated, {} orbits", c.arcs, c.classes);
            let out = match fmt {
                Format::Json => json(&c),
                _ => {
                    let mut s = format!("{} arcs / {} classes\n", c.arcs, c.classes);
                    for (i, (size, through)) in c.orbit_sizes.iter().zip(&c.through_c1).enumerate() {
                        let _ = writeln!(
                            s,
                            "class {}: {size} arcs, {through} through C_1, A* = {{{}}}",
                            i + 1,
                            c.representatives[i].join(", ")
                        );
                    }
                    if let Some(n) = c.formula_classes {
                        let _ = writeln!(s, "formula: {n} classes, {} arcs", c.formula_arcs);
                    }
                    s
                }
            };
            emit(&out, None)
        }
        CensusKind::Mathon8 { field, force, no_verify } => {
            let f = build_field(field)?;
            eprintln!("[census] proper Mathon 8-arcs over GF(2^{})", f.degree());
            let c = census::classify_mathon8(&f, *force, !*no_verify)?;
            eprintln!("[census] {} arcs through {} base arcs", c.arcs_per_base.iter().sum::<usize>(), c.base_arcs.len());
            let total: usize = c.arcs_per_base.iter().sum();
            if !*no_verify && c.verified_arcs != total {
                return Err(CliError::Verify(format!("{} of {total} arcs failed verification", total - c.verified_arcs)));
            }
            let out = match fmt {
                Format::Json => json(&c),
                _ => {
                    let mut s = format!("{} classes from {total} arcs\n", c.classes.len());
                    for (i, k) in c.classes.iter().enumerate() {
                        let _ = writeln!(s, "class {}: {} arcs, |Aut| = {}", i + 1, k.members, k.automorphisms);
                        for line in &k.canonical {
                            let _ = writeln!(s, "  {line}");
                        }
                    }
                    match c.formula_classes {
                        Some(n) => {
                            let _ = writeln!(s, "formula: {n}");
                        }
                        None => {
                            let _ = writeln!(s, "formula: not applicable");
                        }
                    }
                    if let Some(n) = &c.note {
                        let _ = writeln!(s, "note: {n}");
                    }
                    s
                }
            };
            emit(&out, None)
        }
    }
}

fn reproduce(fmt: Format) -> CliResult<()> {
    eprintln!("[pg32] solving trace systems, census and classification");
    let r = census::reproduce_pg32_report()?;
    eprintln!("[pg32] {} mismatches", r.mismatches.len());
    let out = match fmt {
        Format::Json => json(&r),
        Format::Csv => census::t_table_csv(&r.t_tables),
        Format::Text => {
            let mut s = String::new();
            for row in &r.t_tables {
                let mark = match row.matches_golden {
                    Some(true) => "ok",
                    Some(false) => "MISMATCH",
                    None => "-",
                };
                let _ = writeln!(s, "{:<16} σ={:<2} {:?}: {} [{mark}]", row.case.label(), row.sigma, row.form, row.t_values.join(" "));
            }
            let _ = writeln!(s, "D-conics {}  M-conics {}  arcs {}  classes {}", r.d_conics, r.m_conics, r.mathon_arcs, r.classes.len());
            for c in &r.classes {
                let _ = writeln!(s, "class {:?}: {} arcs, |Aut| = {}", c.exponent_triple, c.members, c.automorphisms);
            }
            let _ = writeln!(s, "C_1^θ: {}", r.theta_image);
            let _ = writeln!(s, "rescaled: {}", r.rescaled_conic);
            for e in &r.constructed_arc {
                let _ = writeln!(s, "  {e}");
            }
            for m in &r.mismatches {
                let _ = writeln!(s, "MISMATCH {}: expected {} got {}", m.item, m.expected, m.got);
            }
            let _ = writeln!(s, "{}", if r.is_green() { "all values match" } else { "mismatches found" });
            s
        }
    };
    emit(&out, None)?;
    if r.is_green() {
        Ok(())
    } else {
        Err(CliError::Golden(format!("{} values differ", r.mismatches.len())))
    }
}
