//! Command-line front end for the invertible-TQFT classification library.
//!
//! Exit codes: 0 on success, 2 on input/parse errors, 3 when the answer is
//! mathematically undetermined or unsupported by the catalog (the reason is
//! still printed, so scripts can tell open problems from usage bugs).

use clap::{Parser, Subcommand};
use itqft_core::abelian::CoefficientGroup;
use itqft_core::descriptor::{parse_group_expr, GroupDescriptor};
use itqft_core::manifolds::{parse_manifold, ParsedManifold};
use itqft_core::scalar::{parse_signed_rational, Scalar};
use itqft_core::spectra::{
    mapping_group, skk_group, truncated_mt_spectrum, KInvariant, SpectraError, SplitKnown,
    TangentialStructure, TwoTermSpectrum,
};
use itqft_core::stablecoh::{
    cross_check, stable_cohomology, CohomologySource, CohomologyValue, CrossCheckVerdict,
    OracleConfig, OracleError,
};
use itqft_core::targets::{picard, PicardKInvariant, TargetError, TargetName, WittElement};
use itqft_core::tqft::{
    classify_2d, classify_extended, classify_nonextended, classify_so_k, crane_yetter_class,
    enumerate_point_extensions, eval_2d, eval_crane_yetter, eval_nonextended,
    is_reflection_positive, partial_extension_ambiguity, ClassificationRoute, ExtendedClass4d,
    Frobenius2dClass, ModularData, NonextendedClass4d, PicardClass, TqftError, TwoDTarget,
};
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "itqft", version, about = "Exact classification and evaluation of invertible 2d/4d TQFTs")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Budget for the bar-complex oracle, in estimated matrix entries.
    #[arg(long, global = true, default_value_t = 5_000_000)]
    budget: u64,
    /// Decimal digits for approximate scalar displays.
    #[arg(long, global = true, default_value_t = 12)]
    precision: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stable cohomology H^n_st(source; coeff) from the fact table.
    Stablecoh {
        /// Source group expression, or W for the Witt group.
        #[arg(long)]
        source: String,
        /// Coefficient group expression, or Cx.
        #[arg(long)]
        coeff: String,
        #[arg(long)]
        degree: usize,
        /// Cross-check against the bar-complex oracle where feasible.
        #[arg(long)]
        oracle: bool,
    },
    /// Truncated Madsen–Tillmann catalog entry.
    Spectrum {
        /// Tangential dimension k of Σ^k MT(structure)(k).
        #[arg(long)]
        mt: usize,
        #[arg(long, default_value = "so")]
        structure: String,
    },
    /// SKK groups, or the SKK class of a manifold expression.
    Skk {
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value = "so")]
        structure: String,
        #[arg(long)]
        manifold: Option<String>,
    },
    /// Mapping group between two-term spectra `(pi0; n; pin; k=zero|unknown)`.
    Mapgroup {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Picard-spectrum catalog entry for a target category.
    Target {
        #[arg(long)]
        name: String,
    },
    /// Classification of fully extended invertible 4d theories.
    Classify {
        #[arg(long)]
        target: String,
        /// Classify with partial SO(k) tangential structure instead (k = 1 or 3).
        #[arg(long = "so-k")]
        so_k: Option<usize>,
        /// Report the partial-extension ambiguity instead.
        #[arg(long)]
        partial: bool,
        /// Classify nonextended d-dimensional theories instead (Vect/sVect).
        #[arg(long)]
        nonextended: Option<usize>,
    },
    /// Evaluate the nonextended partition function λ₁^σ λ₂^{(χ−σ)/2}.
    Partition {
        #[arg(long)]
        lambda1: String,
        #[arg(long)]
        lambda2: String,
        /// Manifold expression; repeat for batch evaluation.
        #[arg(long, required = true)]
        manifold: Vec<String>,
    },
    /// Crane–Yetter evaluation (dim C)^{χ/2} e^{2πi cσ/8}.
    CraneYetter {
        #[arg(long = "global-dim")]
        global_dim: String,
        #[arg(long = "central-charge")]
        central_charge: String,
        /// Manifold expression; repeat for batch evaluation.
        #[arg(long)]
        manifold: Vec<String>,
        /// Also print the (λ₁, λ₂) class of the theory.
        #[arg(long = "as-class")]
        as_class: bool,
    },
    /// The extended classes over one nonextended theory and point datum.
    ExtendPoint {
        #[arg(long)]
        target: String,
        /// Witt element as JSON {"c32": n, "summands": {"idx": [free, t2, t4]}}.
        #[arg(long)]
        witt: Option<String>,
        #[arg(long)]
        lambda1: String,
        #[arg(long)]
        lambda2: String,
    },
    /// Two-dimensional classification for the algebra targets.
    Classify2d {
        #[arg(long)]
        target: String,
        #[arg(long)]
        structure: String,
        /// Evaluate a sample class λ on a surface expression.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        surface: Option<String>,
    },
    /// Reflection positivity of a nonextended 4d theory.
    ReflectionPositive {
        #[arg(long)]
        lambda1: String,
        #[arg(long)]
        lambda2: String,
    },
}

/// Failures carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn undetermined(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<TqftError> for Failure {
    fn from(e: TqftError) -> Self {
        match e {
            TqftError::InvalidModularData(_) => Failure::parse(e.to_string()),
            _ => Failure::undetermined(e.to_string()),
        }
    }
}

impl From<SpectraError> for Failure {
    fn from(e: SpectraError) -> Self {
        match e {
            SpectraError::DegreeMismatch(_, _) => Failure::parse(e.to_string()),
            _ => Failure::undetermined(e.to_string()),
        }
    }
}

impl From<TargetError> for Failure {
    fn from(e: TargetError) -> Self {
        Failure::undetermined(e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::undetermined(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let printer = Printer {
        json: cli.json,
        precision: cli.precision,
    };
    match run(&cli, &printer) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if printer.json {
                let payload = json!({ "error": f.message, "exit_code": f.code });
                println!("{payload}");
            } else {
                match f.code {
                    3 => println!("undetermined: {}", f.message),
                    _ => eprintln!("error: {}", f.message),
                }
            }
            ExitCode::from(f.code)
        }
    }
}

struct Printer {
    json: bool,
    precision: usize,
}

impl Printer {
    fn emit(&self, value: Value, human: String) {
        if self.json {
            println!("{value}");
        } else {
            println!("{human}");
        }
    }

    fn scalar_json(&self, s: &Scalar) -> Value {
        json!({
            "display": s.to_string(),
            "magnitude_approx": format!("{:.*}", self.precision, s.magnitude_f64()),
            "phase_turns": s.phase().to_string(),
        })
    }
}

fn parse_structure(s: &str) -> Result<TangentialStructure, Failure> {
    match s.to_ascii_lowercase().as_str() {
        "so" => Ok(TangentialStructure::So),
        "o" => Ok(TangentialStructure::O),
        other => Err(Failure::parse(format!(
            "structure must be 'so' or 'o', got '{other}'"
        ))),
    }
}

fn parse_scalar(text: &str) -> Result<Scalar, Failure> {
    Scalar::parse(text).map_err(|e| Failure::parse(e.to_string()))
}

fn parse_descriptor(text: &str) -> Result<GroupDescriptor, Failure> {
    parse_group_expr(text).map_err(|e| Failure::parse(e.to_string()))
}

/// Source for stablecoh: a group expression or the Witt group.
fn parse_source(text: &str) -> Result<CohomologySource, Failure> {
    if text.trim() == "W" {
        return Ok(CohomologySource::Witt);
    }
    let d = parse_descriptor(text)?;
    match d.as_fg() {
        Some(g) => Ok(CohomologySource::Fg(g.clone())),
        None => Err(Failure::parse(format!(
            "stable cohomology sources must be finitely generated or W, got '{text}'"
        ))),
    }
}

fn parse_coefficients(text: &str) -> Result<CoefficientGroup, Failure> {
    if text.trim() == "Cx" {
        return Ok(CoefficientGroup::CircleDual);
    }
    let d = parse_descriptor(text)?;
    match d.as_fg() {
        Some(g) => Ok(CoefficientGroup::FgAb(g.clone())),
        None => Err(Failure::parse(format!(
            "coefficients must be finitely generated or Cx, got '{text}'"
        ))),
    }
}

/// Spectrum expression `(pi0; n; pin; k=zero|unknown)`.
fn parse_spectrum_expr(text: &str) -> Result<TwoTermSpectrum, Failure> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Failure::parse("spectrum expression must be parenthesized"))?;
    let parts: Vec<&str> = inner.split(';').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Failure::parse(
            "spectrum expression needs four ';'-separated fields: (pi0; n; pin; k=zero|unknown)",
        ));
    }
    let pi0 = parse_descriptor(parts[0])?;
    let n: usize = parts[1]
        .parse()
        .map_err(|e| Failure::parse(format!("bad degree: {e}")))?;
    if n == 0 {
        return Err(Failure::parse("the top degree n must be positive"));
    }
    let pin = parse_descriptor(parts[2])?;
    let k = match parts[3] {
        "k=zero" => KInvariant::Zero,
        "k=unknown" => KInvariant::Unknown,
        other => {
            return Err(Failure::parse(format!(
                "k-invariant must be 'k=zero' or 'k=unknown', got '{other}'"
            )))
        }
    };
    Ok(TwoTermSpectrum::new(pi0, n, pin, k))
}

fn cohomology_value_json(v: &CohomologyValue) -> Value {
    match v {
        CohomologyValue::Group(g) => {
            let mut payload = json!({ "group": g.to_string() });
            // Purely finitely generated values also carry the canonical
            // serialized form {"free_rank": r, "invariant_factors": [...]}.
            if let Some(fg) = g.as_fg() {
                payload["serialized"] =
                    serde_json::to_value(fg).expect("group serialization is infallible");
            }
            payload
        }
        CohomologyValue::Undetermined { reason } => json!({ "undetermined": reason }),
    }
}

fn split_known_str(s: SplitKnown) -> &'static str {
    match s {
        SplitKnown::Yes => "yes",
        SplitKnown::Unknown => "unknown",
    }
}

fn witt_json(w: &WittElement) -> Value {
    serde_json::to_value(w).expect("witt serialization is infallible")
}

fn extended_class_json(c: &ExtendedClass4d, printer: &Printer) -> Value {
    json!({
        "lambda1": printer.scalar_json(&c.lambda1),
        "lambda2": printer.scalar_json(&c.lambda2),
        "picard_class": match &c.picard_class {
            PicardClass::Trivial => json!("trivial"),
            PicardClass::Witt(w) => witt_json(w),
        },
        "z6": c.z6,
    })
}

fn run(cli: &Cli, printer: &Printer) -> Result<(), Failure> {
    match &cli.command {
        Command::Stablecoh {
            source,
            coeff,
            degree,
            oracle,
        } => {
            let src = parse_source(source)?;
            let coefficients = parse_coefficients(coeff)?;
            let result = stable_cohomology(&src, &coefficients, *degree)
                .map_err(|e| Failure::undetermined(e.to_string()))?;
            let mut payload = json!({
                "source": src.to_string(),
                "coefficients": coefficients.to_string(),
                "degree": degree,
                "value": cohomology_value_json(&result.value),
                "citation": result.citation,
            });
            let mut human = match &result.value {
                CohomologyValue::Group(g) => g.to_string(),
                CohomologyValue::Undetermined { reason } => format!("undetermined: {reason}"),
            };
            if *oracle {
                let fg = match &src {
                    CohomologySource::Fg(g) => g.clone(),
                    CohomologySource::Witt => {
                        return Err(Failure::undetermined(
                            "the bar oracle handles finite cyclic groups, not W",
                        ))
                    }
                };
                let config = OracleConfig {
                    budget: cli.budget,
                    ..OracleConfig::default()
                };
                let report = cross_check(&fg, &coefficients, *degree, &config)?;
                let verdict = match report.verdict {
                    CrossCheckVerdict::Match => "match",
                    CrossCheckVerdict::Mismatch => "mismatch",
                    CrossCheckVerdict::TableUndetermined => "table-undetermined",
                };
                payload["oracle"] = json!({
                    "value": report.oracle.to_string(),
                    "verdict": verdict,
                });
                human = format!("{human}  [oracle: {} — {verdict}]", report.oracle);
            }
            printer.emit(payload, human);
            if let CohomologyValue::Undetermined { .. } = result.value {
                return Err(Failure::undetermined("value outside the anchored fact table"));
            }
            Ok(())
        }

        Command::Spectrum { mt, structure } => {
            let structure = parse_structure(structure)?;
            let entry = truncated_mt_spectrum(*mt, structure)?;
            let homotopy: Vec<String> = entry.homotopy.iter().map(|g| g.to_string()).collect();
            let human = format!(
                "Σ^{k} MT{structure}({k}) truncation: π_0..π_{top} = [{groups}]\nk-invariant: {note}",
                k = entry.k,
                structure = entry.structure,
                top = entry.homotopy.len() - 1,
                groups = homotopy.join(", "),
                note = entry.k_invariant_note,
            );
            printer.emit(
                json!({
                    "k": entry.k,
                    "structure": entry.structure.to_string(),
                    "homotopy": homotopy,
                    "k_invariant_note": entry.k_invariant_note,
                }),
                human,
            );
            Ok(())
        }

        Command::Skk {
            dim,
            structure,
            manifold,
        } => match (dim, manifold) {
            (_, Some(expr)) => {
                let m = match parse_manifold(expr).map_err(|e| Failure::parse(e.to_string()))? {
                    ParsedManifold::FourManifold(m) => m,
                    ParsedManifold::Surface(_) => {
                        return Err(Failure::parse("SKK classes are computed for 4-manifolds"))
                    }
                };
                let class = m.skk_class();
                printer.emit(
                    json!({
                        "chi": class.chi,
                        "sigma": class.sigma,
                        "second_factor": class.second_factor,
                    }),
                    format!(
                        "chi = {}, sigma = {}, second factor (sigma-chi)/2 = {}",
                        class.chi, class.sigma, class.second_factor
                    ),
                );
                Ok(())
            }
            (Some(d), None) => {
                let structure = parse_structure(structure)?;
                let g = skk_group(*d, structure)?;
                printer.emit(
                    json!({
                        "dimension": g.dimension,
                        "structure": g.structure.to_string(),
                        "group": g.presentation.to_string(),
                        "second_factor_projection": g.second_factor_projection,
                        "note": g.note,
                    }),
                    format!(
                        "SKK_{} ({}) = {}{}; {}",
                        g.dimension,
                        g.structure,
                        g.presentation,
                        g.second_factor_projection
                            .map(|p| format!(", second factor {p}"))
                            .unwrap_or_default(),
                        g.note
                    ),
                );
                Ok(())
            }
            (None, None) => Err(Failure::parse("pass --dim or --manifold")),
        },

        Command::Mapgroup { source, target } => {
            let e = parse_spectrum_expr(source)?;
            let f = parse_spectrum_expr(target)?;
            let r = mapping_group(&e, &f)?;
            let human = format!(
                "kernel: {}\nquotient: {} ({})\nsplit known: {}",
                r.kernel,
                r.quotient,
                r.quotient_description,
                split_known_str(r.split_known)
            );
            printer.emit(
                json!({
                    "kernel": r.kernel.to_string(),
                    "obstruction": cohomology_value_json(&r.obstruction),
                    "quotient": r.quotient.factor_strings(),
                    "quotient_description": r.quotient_description,
                    "split_known": split_known_str(r.split_known),
                    "total_order": r.total_order().map(|o| o.to_string()),
                }),
                human,
            );
            Ok(())
        }

        Command::Target { name } => {
            let name = TargetName::parse(name)?;
            let p = picard(name)?;
            let homotopy: Vec<String> = (0..=p.cat_dim).map(|j| p.pi(j).to_string()).collect();
            let violations = p.four_dim_hypothesis_violations();
            let k = match &p.k_invariant {
                PicardKInvariant::Zero => "zero".to_string(),
                PicardKInvariant::Unknown => "unknown".to_string(),
                PicardKInvariant::NontrivialKnown(tag) => format!("nontrivial ({tag})"),
            };
            let human = format!(
                "Pic {}: π_0..π_{} = [{}]\ntop-complex: {}\nk-invariant: {}\nfour-dimensional hypothesis check: {}",
                p.name,
                p.cat_dim,
                homotopy.join(", "),
                p.top_complex,
                k,
                if violations.is_empty() {
                    "passes".to_string()
                } else {
                    format!("fails ({})", violations.join("; "))
                }
            );
            printer.emit(
                json!({
                    "name": p.name.to_string(),
                    "homotopy": homotopy,
                    "top_complex": p.top_complex,
                    "k_invariant": k,
                    "hypothesis_violations": violations,
                    "brown_comenetz": p.brown_comenetz,
                }),
                human,
            );
            Ok(())
        }

        Command::Classify {
            target,
            so_k,
            partial,
            nonextended,
        } => {
            let name = TargetName::parse(target)?;
            if let Some(d) = nonextended {
                let group = classify_nonextended(name, *d)?;
                printer.emit(
                    json!({
                        "target": name.to_string(),
                        "dimension": d,
                        "group": group.factor_strings(),
                    }),
                    format!("nonextended invertible {d}d theories with target {name}: {group}"),
                );
                return Ok(());
            }
            if let Some(k) = so_k {
                let r = classify_so_k(name, *k)?;
                let human = format!(
                    "SO({k}) classification for {}: kernel {}, quotient {}{}",
                    name,
                    r.kernel
                        .as_ref()
                        .map(|g| g.to_string())
                        .unwrap_or_else(|| "none".to_string()),
                    r.quotient,
                    r.upward_fiber
                        .as_ref()
                        .map(|f| format!(", upward fiber {f}"))
                        .unwrap_or_default()
                );
                printer.emit(
                    json!({
                        "target": name.to_string(),
                        "k": k,
                        "kernel": r.kernel.map(|g| g.to_string()),
                        "quotient": r.quotient.factor_strings(),
                        "upward_fiber": r.upward_fiber.map(|g| g.to_string()),
                        "notes": r.notes,
                    }),
                    human,
                );
                return Ok(());
            }
            if *partial {
                let r = partial_extension_ambiguity(name)?;
                printer.emit(
                    json!({
                        "target": name.to_string(),
                        "pi0_pic": r.pi0_pic.to_string(),
                        "z6": r.z6.to_string(),
                        "notes": r.notes,
                    }),
                    format!(
                        "partial-extension ambiguity for {}: π₀(Pic) = {}, finite part {}",
                        name, r.pi0_pic, r.z6
                    ),
                );
                return Ok(());
            }
            let r = classify_extended(name)?;
            let human = format!(
                "classification for {}: 0 → {} → π₀ → {} → 0 (split known: {})",
                name,
                r.kernel,
                r.quotient,
                split_known_str(r.split_known)
            );
            printer.emit(
                json!({
                    "kernel": r.kernel.to_string(),
                    "quotient": r.quotient.factor_strings(),
                    "split_known": split_known_str(r.split_known),
                    "obstruction": cohomology_value_json(&r.obstruction),
                    "route": match r.route {
                        ClassificationRoute::MappingGroup => "mapping-group",
                        ClassificationRoute::BrownComenetz => "character-dual",
                    },
                    "notes": r.notes,
                }),
                human,
            );
            Ok(())
        }

        Command::Partition {
            lambda1,
            lambda2,
            manifold,
        } => {
            let cls = NonextendedClass4d::new(parse_scalar(lambda1)?, parse_scalar(lambda2)?);
            let mut results = Vec::new();
            let mut humans = Vec::new();
            for expr in manifold {
                let m = match parse_manifold(expr).map_err(|e| Failure::parse(e.to_string()))? {
                    ParsedManifold::FourManifold(m) => m,
                    ParsedManifold::Surface(_) => {
                        return Err(Failure::parse("partition functions here are four-dimensional"))
                    }
                };
                let value = eval_nonextended(&cls, &m);
                humans.push(format!("Z({expr}) = {value}"));
                results.push(json!({
                    "manifold": expr,
                    "chi": m.chi(),
                    "sigma": m.sigma(),
                    "value": printer.scalar_json(&value),
                }));
            }
            printer.emit(json!({ "results": results }), humans.join("\n"));
            Ok(())
        }

        Command::CraneYetter {
            global_dim,
            central_charge,
            manifold,
            as_class,
        } => {
            let dim = parse_signed_rational(global_dim).map_err(Failure::parse)?;
            let c = parse_signed_rational(central_charge).map_err(Failure::parse)?;
            let md = ModularData::new(dim, c)?;
            let mut payload = json!({});
            let mut humans = Vec::new();
            if *as_class {
                let cls = crane_yetter_class(&md);
                payload["class"] = json!({
                    "lambda1": printer.scalar_json(&cls.lambda1),
                    "lambda2": printer.scalar_json(&cls.lambda2),
                });
                humans.push(format!(
                    "class: lambda1 = {}, lambda2 = {}",
                    cls.lambda1, cls.lambda2
                ));
            }
            let mut results = Vec::new();
            for expr in manifold {
                let m = match parse_manifold(expr).map_err(|e| Failure::parse(e.to_string()))? {
                    ParsedManifold::FourManifold(m) => m,
                    ParsedManifold::Surface(_) => {
                        return Err(Failure::parse("Crane–Yetter evaluates on 4-manifolds"))
                    }
                };
                let value = eval_crane_yetter(&md, &m);
                humans.push(format!("Z({expr}) = {value}"));
                results.push(json!({
                    "manifold": expr,
                    "value": printer.scalar_json(&value),
                }));
            }
            if !results.is_empty() {
                payload["results"] = json!(results);
            }
            printer.emit(payload, humans.join("\n"));
            Ok(())
        }

        Command::ExtendPoint {
            target,
            witt,
            lambda1,
            lambda2,
        } => {
            let name = TargetName::parse(target)?;
            let picard_class = match witt {
                Some(text) => {
                    let w: WittElement = serde_json::from_str(text)
                        .map_err(|e| Failure::parse(format!("bad witt JSON: {e}")))?;
                    PicardClass::Witt(w)
                }
                None => PicardClass::Trivial,
            };
            let classes = enumerate_point_extensions(
                name,
                picard_class,
                parse_scalar(lambda1)?,
                parse_scalar(lambda2)?,
            )?;
            let human = format!(
                "{} extended class(es):\n{}",
                classes.len(),
                classes
                    .iter()
                    .map(|c| format!("  z6 = {}", c.z6))
                    .collect::<Vec<_>>()
                    .join("\n")
            );
            printer.emit(
                json!({
                    "count": classes.len(),
                    "classes": classes
                        .iter()
                        .map(|c| extended_class_json(c, printer))
                        .collect::<Vec<_>>(),
                }),
                human,
            );
            Ok(())
        }

        Command::Classify2d {
            target,
            structure,
            lambda,
            surface,
        } => {
            let target = match target.to_ascii_lowercase().as_str() {
                "alg" => TwoDTarget::Alg,
                "salg" => TwoDTarget::SAlg,
                other => {
                    return Err(Failure::parse(format!(
                        "2d targets are 'alg' and 'salg', got '{other}'"
                    )))
                }
            };
            let structure = parse_structure(structure)?;
            let r = classify_2d(target, structure)?;
            let mut payload = json!({
                "target": r.target.to_string(),
                "structure": structure.to_string(),
                "kernel": r.kernel.to_string(),
                "quotient": r.quotient.to_string(),
                "nonsplit": r.nonsplit,
                "class_model": r.class_model,
                "notes": r.notes,
            });
            let mut humans = vec![format!(
                "2d classification ({}, {}): 0 → {} → π₀ → {} → 0{}\nmodel: {}",
                r.target,
                structure,
                r.kernel,
                r.quotient,
                match r.nonsplit {
                    Some(true) => " [nonsplit]",
                    Some(false) => " [split]",
                    None => "",
                },
                r.class_model
            )];
            if let (Some(lambda), Some(surface)) = (lambda, surface) {
                let cls = Frobenius2dClass::oriented(
                    parse_scalar(lambda)?,
                    matches!(target, TwoDTarget::SAlg),
                );
                let s = match parse_manifold(surface).map_err(|e| Failure::parse(e.to_string()))? {
                    ParsedManifold::Surface(s) => s,
                    ParsedManifold::FourManifold(_) => {
                        return Err(Failure::parse("expected a surface expression like Sigma(2)"))
                    }
                };
                let value = eval_2d(&cls, &s);
                payload["evaluation"] = json!({
                    "surface": surface,
                    "chi": s.chi(),
                    "value": printer.scalar_json(&value),
                });
                humans.push(format!("Z({surface}) = {value}"));
            }
            printer.emit(payload, humans.join("\n"));
            Ok(())
        }

        Command::ReflectionPositive { lambda1, lambda2 } => {
            let cls = NonextendedClass4d::new(parse_scalar(lambda1)?, parse_scalar(lambda2)?);
            let positive = is_reflection_positive(&cls);
            printer.emit(
                json!({ "reflection_positive": positive }),
                format!("reflection positive: {positive}"),
            );
            Ok(())
        }
    }
}
