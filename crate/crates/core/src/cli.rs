//! Command-line front end. Every subcommand prints one JSON document (or CSV
//! table) to standard output, or writes it to `--out` and prints a summary
//! line instead.

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde_json::Value;

use crate::csym::{self, ConjugationMatrix};
use crate::dynamics;
use crate::error::Error;
use crate::lft::{Lft, LftKind, Point};
use crate::operators;
use crate::output::{self, complex, complex_list, document, num, real_list};
use crate::series::TruncatedSeries;
use crate::space::SpaceParams;

#[derive(Debug, Parser)]
#[command(name = "bergman-csym", version, about = "Composition operators on weighted Bergman spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a linear fractional self-map and locate its Denjoy–Wolff point.
    Classify {
        #[command(flatten)]
        symbol: SymbolArgs,
    },
    /// Maclaurin coefficients of a symbol.
    Series {
        #[command(flatten)]
        symbol: SymbolArgs,
        #[arg(long, default_value_t = 16)]
        dim: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Truncated operator matrix in the orthonormal monomial basis.
    Matrix {
        #[command(flatten)]
        symbol: SymbolArgs,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, default_value_t = 16)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = MatrixOp::Composition)]
        op: MatrixOp,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check ⟨C_φ f, K_p⟩ = f(φ(p)) on seeded random polynomials.
    KernelCheck {
        #[command(flatten)]
        symbol: SymbolArgs,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        beta: f64,
        /// Kernel point p.
        #[arg(long, value_parser = parse_complex, allow_negative_numbers = true)]
        point: Complex64,
        #[arg(long, default_value_t = 256)]
        dim: usize,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Block residual of the factorisation C_φ^* = M_g C_σ M_h^*.
    HurstCheck {
        #[command(flatten)]
        symbol: SymbolArgs,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, default_value_t = 256)]
        dim: usize,
        #[arg(long, default_value_t = 8)]
        block: usize,
    },
    /// Gram table ⟨v_n, v_m⟩ of v_n = C_{φ_α}^* zⁿ.
    Gram {
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, value_parser = parse_complex, allow_negative_numbers = true)]
        alpha: Complex64,
        #[arg(long)]
        n: usize,
        /// Truncation degree; required for non-integer beta.
        #[arg(long)]
        dim: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cross Gram block between the spanning sets of V_0 and V_{3+β}.
    Subspace {
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, value_parser = parse_complex, allow_negative_numbers = true)]
        alpha: Complex64,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 4)]
        count: usize,
    },
    /// The two routes to ⟨φ_α^{3+β}, K_0⟩ = α^{3+β}.
    Witness {
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, value_parser = parse_complex, allow_negative_numbers = true)]
        alpha: Complex64,
    },
    /// Seeded search for a conjugation making C_φ complex symmetric.
    Csym {
        #[command(flatten)]
        symbol: SymbolArgs,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, default_value_t = 16)]
        dim: usize,
        #[arg(long, default_value_t = 200)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Orbit of a point under a self-map.
    Iterate {
        #[command(flatten)]
        symbol: SymbolArgs,
        #[arg(long, value_parser = parse_complex, allow_negative_numbers = true)]
        z0: Complex64,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Residual of C_σ (1-z)^λ = s^λ (1-z)^λ for σ(z) = sz + 1 - s.
    Eigencheck {
        #[arg(long, value_parser = parse_complex, allow_negative_numbers = true)]
        s: Complex64,
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, default_value_t = 512)]
        dim: usize,
        /// Highest degree compared; defaults to dim/4.
        #[arg(long)]
        block: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SymbolKind {
    Identity,
    Rotation,
    Involution,
    Elliptic,
    Psi,
    Lft,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixOp {
    Composition,
    Adjoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct SymbolArgs {
    /// identity, rotation (λz), involution (φ_α), elliptic (φ_α∘(λφ_α)), psi (ψ_s) or lft (a..d).
    #[arg(long, value_enum, default_value_t = SymbolKind::Lft)]
    pub symbol: SymbolKind,
    #[arg(long, value_parser = parse_complex, allow_negative_numbers = true)]
    pub alpha: Option<Complex64>,
    /// Unimodular rotation factor.
    #[arg(long, value_parser = parse_complex, allow_negative_numbers = true)]
    pub lambda: Option<Complex64>,
    /// Sets the rotation factor to e^{2πi/N}.
    #[arg(long)]
    pub order: Option<u64>,
    #[arg(long = "s", value_parser = parse_complex, allow_negative_numbers = true)]
    pub s: Option<Complex64>,
    #[arg(long = "a", value_parser = parse_complex, allow_negative_numbers = true)]
    pub a: Option<Complex64>,
    #[arg(long = "b", value_parser = parse_complex, allow_negative_numbers = true)]
    pub b: Option<Complex64>,
    #[arg(long = "c", value_parser = parse_complex, allow_negative_numbers = true)]
    pub c: Option<Complex64>,
    #[arg(long = "d", value_parser = parse_complex, allow_negative_numbers = true)]
    pub d: Option<Complex64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Exit status and message for a failed invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotAnEigenvector { .. } | Error::EscapedDisk { .. } | Error::NotConjugation(_) => {
                EXIT_NUMERICAL
            }
            _ => EXIT_VALIDATION,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self {
            code: EXIT_NUMERICAL,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `"re,im"` or `"re"`.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let parse = |t: &str| {
        t.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("invalid number {t:?} in {s:?}; expected \"re,im\""))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(format!("expected \"re,im\", got {s:?}")),
    }
}

impl SymbolArgs {
    fn rotation_factor(&self) -> CliResult<Complex64> {
        match (self.lambda, self.order) {
            (Some(l), None) => Ok(l),
            (None, Some(n)) if n > 0 => Ok(Complex64::from_polar(1.0, 2.0 * PI / n as f64)),
            (None, Some(_)) => Err(CliError::usage("--order must be positive")),
            (Some(_), Some(_)) => Err(CliError::usage("give only one of --lambda and --order")),
            (None, None) => Err(CliError::usage("this symbol needs --lambda or --order")),
        }
    }

    fn alpha(&self) -> CliResult<Complex64> {
        self.alpha
            .ok_or_else(|| CliError::usage("this symbol needs --alpha"))
    }

    pub fn build(&self) -> CliResult<Lft> {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let lft = match self.symbol {
            SymbolKind::Identity => Lft::identity(),
            SymbolKind::Rotation => Lft::rotation(self.rotation_factor()?)?,
            SymbolKind::Involution => Lft::involution(self.alpha()?)?,
            SymbolKind::Elliptic => Lft::conjugate_rotation(self.alpha()?, self.rotation_factor()?)?,
            SymbolKind::Psi => Lft::psi(self.s.ok_or_else(|| CliError::usage("psi needs --s"))?)?,
            SymbolKind::Lft => Lft::new(
                self.a.unwrap_or(one),
                self.b.unwrap_or(zero),
                self.c.unwrap_or(zero),
                self.d.unwrap_or(one),
            )?,
        };
        Ok(lft)
    }
}

fn emit(
    w: &mut dyn Write,
    output: &OutputArgs,
    json: Value,
    csv: Option<String>,
    summary: String,
) -> CliResult<()> {
    let body = match output.format {
        Format::Json => output::to_json_string(&json),
        Format::Csv => csv.ok_or_else(|| CliError::usage("CSV output is not available here"))?,
    };
    match &output.out {
        Some(path) => {
            fs::write(path, body)?;
            writeln!(w, "{summary}; wrote {}", path.display())?;
        }
        None => w.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn print_json(w: &mut dyn Write, json: Value) -> CliResult<()> {
    w.write_all(output::to_json_string(&json).as_bytes())?;
    Ok(())
}

fn space(beta: f64) -> CliResult<SpaceParams> {
    Ok(SpaceParams::new(beta)?)
}

/// Runs a parsed command, writing results to `w`.
pub fn run(cli: &Cli, w: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Classify { symbol } => print_json(w, classify_report(&symbol.build()?)?),
        Command::Series {
            symbol,
            dim,
            output,
        } => {
            let f = symbol.build()?.to_series(*dim)?;
            let json = document(vec![
                ("degree", Value::from(*dim)),
                ("coefficients", complex_list(f.coeffs())),
            ]);
            let summary = format!("series of degree {dim}");
            emit(w, output, json, Some(output::indexed_csv(f.coeffs())), summary)
        }
        Command::Matrix {
            symbol,
            beta,
            dim,
            op,
            output,
        } => {
            let params = space(*beta)?;
            let mut m = operators::composition_matrix(&symbol.build()?, &params, *dim)?;
            if *op == MatrixOp::Adjoint {
                m = m.adjoint();
            }
            let json = document(vec![
                ("beta", num(*beta)),
                ("degree", Value::from(*dim)),
                ("basis", Value::from("orthonormal")),
                ("entries", output::matrix(m.entries())),
            ]);
            let summary = format!("{}x{} matrix", m.dim(), m.dim());
            emit(w, output, json, Some(output::matrix_csv(m.entries())), summary)
        }
        Command::KernelCheck {
            symbol,
            beta,
            point,
            dim,
            samples,
            seed,
        } => {
            let params = space(*beta)?;
            let phi = symbol.build()?;
            let max_error = kernel_check(&phi, &params, *point, *dim, *samples, *seed)?;
            print_json(
                w,
                document(vec![
                    ("beta", num(*beta)),
                    ("point", complex(*point)),
                    ("degree", Value::from(*dim)),
                    ("samples", Value::from(*samples)),
                    ("max_error", num(max_error)),
                ]),
            )
        }
        Command::HurstCheck {
            symbol,
            beta,
            dim,
            block,
        } => {
            let params = space(*beta)?;
            let phi = symbol.build()?;
            let residual = operators::verify_hurst(&phi, &params, *dim, *block)?;
            let doubled = operators::verify_hurst(&phi, &params, 2 * dim, *block)?;
            print_json(
                w,
                document(vec![
                    ("beta", num(*beta)),
                    ("degree", Value::from(*dim)),
                    ("block", Value::from(*block)),
                    ("residual", num(residual)),
                    ("residual_doubled", num(doubled)),
                ]),
            )
        }
        Command::Gram {
            beta,
            alpha,
            n,
            dim,
            output,
        } => {
            let params = space(*beta)?;
            let (table, mode) = match (params.is_integer(), dim) {
                (true, _) => (csym::gram_exact(&params, *alpha, *n)?, "exact"),
                (false, Some(d)) => (csym::gram_truncated(&params, *alpha, *n, *d)?, "truncated"),
                (false, None) => {
                    return Err(CliError::usage("non-integer beta needs --dim for the truncated route"))
                }
            };
            let width = (beta + 3.0).ceil() as usize;
            let in_band = table.max_in_band(width);
            let out_band = table.max_out_of_band(width);
            let mut extra = vec![
                ("mode", Value::from(mode)),
                ("band_width", Value::from(width)),
                ("max_in_band", num(in_band)),
                ("max_out_of_band", num(out_band)),
                ("hermitian_defect", num(table.hermitian_defect())),
            ];
            if mode == "truncated" {
                let col0: Vec<Complex64> = (0..=*n)
                    .map(|k| csym::gram_generalized_v0(&params, *alpha, k))
                    .collect::<Result<_, _>>()?;
                let dev = (0..=*n)
                    .map(|k| (table.get(k, 0) - col0[k]).norm())
                    .fold(0.0, f64::max);
                extra.push(("column0_closed_form", complex_list(&col0)));
                extra.push(("column0_deviation", num(dev)));
            }
            let summary = format!("max in-band {in_band:.3e}, max out-of-band {out_band:.3e}");
            emit(w, output, output::gram_json(&table, extra), Some(output::gram_csv(&table)), summary)
        }
        Command::Subspace {
            beta,
            alpha,
            order,
            count,
        } => {
            let report = csym::subspace_orthogonality(&space(*beta)?, *alpha, *order, *count)?;
            print_json(
                w,
                document(vec![
                    ("beta", num(*beta)),
                    ("alpha", complex(*alpha)),
                    ("order", Value::from(*order)),
                    ("count", Value::from(*count)),
                    ("max_cross", num(report.max_cross)),
                    ("threshold", Value::from(report.threshold)),
                    ("guaranteed", Value::from(report.guaranteed)),
                ]),
            )
        }
        Command::Witness { beta, alpha } => {
            let wv = csym::obstruction_witness(&space(*beta)?, *alpha)?;
            print_json(
                w,
                document(vec![
                    ("beta", num(*beta)),
                    ("alpha", complex(*alpha)),
                    ("direct", complex(wv.direct)),
                    ("inner_product", complex(wv.inner_product)),
                    ("difference", num(wv.difference)),
                ]),
            )
        }
        Command::Csym {
            symbol,
            beta,
            dim,
            iters,
            seed,
            output,
        } => {
            let params = space(*beta)?;
            let phi = symbol.build()?;
            let t = operators::composition_matrix(&phi, &params, *dim)?;
            let result = csym::conjugation_search(&t, *iters, *seed);
            let best = result.best();
            let plain = csym::csym_residual(&t, &ConjugationMatrix::identity(t.dim()))?;
            let mut fields = vec![
                ("beta", num(*beta)),
                ("degree", Value::from(*dim)),
                ("iters", Value::from(*iters)),
                ("seed", Value::from(*seed)),
                ("kind", Value::from(phi.classify().kind.as_str())),
                ("plain_conjugation_residual", num(plain)),
                ("best_residual", num(best)),
                (
                    "unitarity_defect",
                    num(result.conjugation.unitarity_defect()),
                ),
                ("symmetry_defect", num(result.conjugation.symmetry_defect())),
            ];
            if symbol.symbol == SymbolKind::Elliptic {
                if let (Some(order), Some(alpha), true) = (symbol.order, symbol.alpha, params.is_integer()) {
                    let cert = csym::subspace_orthogonality(&params, alpha, order as usize, 4)?;
                    fields.push((
                        "subspace_certificate",
                        document_fragment(vec![
                            ("order", Value::from(order)),
                            ("max_cross", num(cert.max_cross)),
                            ("threshold", Value::from(cert.threshold)),
                            ("guaranteed", Value::from(cert.guaranteed)),
                        ]),
                    ));
                }
            }
            fields.push(("best_so_far", real_list(&result.best_so_far)));
            fields.push(("residuals", real_list(&result.residuals)));
            let csv = trace_csv(&result.best_so_far, &result.residuals);
            let summary = format!("best residual {best:.3e} after {iters} iterations");
            emit(w, output, document(fields), Some(csv), summary)
        }
        Command::Iterate {
            symbol,
            z0,
            n,
            output,
        } => {
            let phi = symbol.build()?;
            let orbit = dynamics::iterate(&phi, *z0, *n)?;
            let json = document(vec![
                ("z0", complex(*z0)),
                ("steps", Value::from(orbit.steps)),
                ("converged", Value::from(orbit.converged)),
                ("limit", orbit.limit.map_or(Value::Null, complex)),
                ("iterates", complex_list(&orbit.iterates)),
            ]);
            let summary = match orbit.limit {
                Some(l) => format!("converged to {} after {} steps", l, orbit.steps),
                None => format!("no convergence within {} steps", orbit.steps),
            };
            emit(w, output, json, Some(output::indexed_csv(&orbit.iterates)), summary)
        }
        Command::Eigencheck {
            s,
            lambda,
            beta,
            dim,
            block,
        } => {
            let params = space(*beta)?;
            let block = block.unwrap_or(dim / 4);
            let residual = dynamics::hurst_eigencheck(*s, *lambda, &params, *dim, block)?;
            print_json(
                w,
                document(vec![
                    ("s", complex(*s)),
                    ("lambda", num(*lambda)),
                    ("eigenvalue", complex(s.powf(*lambda))),
                    ("beta", num(*beta)),
                    ("degree", Value::from(*dim)),
                    ("block", Value::from(block)),
                    ("residual", num(residual)),
                ]),
            )
        }
    }
}

fn document_fragment(fields: Vec<(&str, Value)>) -> Value {
    Value::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

fn trace_csv(best: &[f64], raw: &[f64]) -> String {
    let mut out = String::from("iter,best_so_far,residual\n");
    for (i, (b, r)) in best.iter().zip(raw).enumerate() {
        out.push_str(&format!("{i},{b:.16e},{r:.16e}\n"));
    }
    out
}

fn classify_report(phi: &Lft) -> CliResult<Value> {
    let class = phi.classify();
    if class.kind == LftKind::Identity {
        return Ok(document(vec![
            ("kind", Value::from("identity")),
            ("is_automorphism", Value::from(true)),
        ]));
    }
    let report = phi.fixed_points()?;
    let points: Vec<Value> = report
        .points
        .iter()
        .map(|p| {
            let point = match p.point {
                Point::Finite(z) => complex(z),
                Point::Infinity => Value::from("infinity"),
            };
            document_fragment(vec![
                ("point", point),
                ("location", serde_json::to_value(p.location).expect("enum serializes")),
                ("multiplier", p.multiplier.map_or(Value::Null, complex)),
            ])
        })
        .collect();
    let (dw, route) = match dynamics::denjoy_wolff(phi) {
        Ok(d) => (complex(d.omega), Value::from(d.route.as_str())),
        Err(_) => (Value::Null, Value::Null),
    };
    let mut fields = vec![
        ("kind", Value::from(class.kind.as_str())),
        ("is_automorphism", Value::from(class.is_automorphism)),
        ("coefficients", complex_list(&phi.coefficients())),
        ("fixed_points", Value::Array(points)),
        ("dw", dw),
        ("dw_route", route),
    ];
    if let Ok(nf) = phi.hyperbolic_normal_form() {
        fields.push(("normal_form_s", complex(nf.s)));
    }
    Ok(document(fields))
}

fn kernel_check(
    phi: &Lft,
    params: &SpaceParams,
    point: Complex64,
    degree: usize,
    samples: usize,
    seed: u64,
) -> CliResult<f64> {
    let c = operators::composition_matrix(phi, params, degree)?;
    let k = params.kernel_series(point, degree)?;
    let target = phi.apply(point);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let f = random_polynomial(&mut rng, 10.min(degree));
        let lhs = params.inner_product(&c.apply_series(params, &f), &k);
        worst = worst.max((lhs - f.eval(target)).norm());
    }
    Ok(worst)
}

fn random_polynomial(rng: &mut ChaCha8Rng, degree: usize) -> TruncatedSeries {
    let coeffs = (0..=degree)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        })
        .collect();
    TruncatedSeries::new(coeffs).expect("normal samples are finite")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CliResult<String> {
        let cli = Cli::try_parse_from(std::iter::once("bergman-csym").chain(args.iter().copied()))
            .map_err(|e| CliError::usage(e.to_string()))?;
        let mut buf = Vec::new();
        run(&cli, &mut buf)?;
        Ok(String::from_utf8(buf).unwrap())
    }

    fn json(args: &[&str]) -> Value {
        serde_json::from_str(&run_args(args).unwrap()).unwrap()
    }

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("0.5,0"), Ok(Complex64::new(0.5, 0.0)));
        assert_eq!(parse_complex("-0.7"), Ok(Complex64::new(-0.7, 0.0)));
        assert_eq!(parse_complex(" 0 , 0.3 "), Ok(Complex64::new(0.0, 0.3)));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("nan").is_err());
        assert!(parse_complex("i").is_err());
    }

    #[test]
    fn classify_examples() {
        let v = json(&["classify", "--a", "1", "--b", "1", "--c", "0", "--d", "2"]);
        assert_eq!(v["schema"], "bergman-csym/1");
        assert_eq!(v["dw_route"], "boundary-attracting");
        assert_eq!(v["dw"][0].as_f64(), Some(1.0));
        assert_eq!(v["dw"][1].as_f64(), Some(0.0));

        let v = json(&["classify", "--symbol", "identity"]);
        assert_eq!(v["kind"], "identity");

        let v = json(&["classify", "--a", "0.5", "--b", "0", "--c", "-0.5", "--d", "1"]);
        assert_eq!(v["kind"], "hyperbolic-nonautomorphism");
    }

    #[test]
    fn classify_rejects_non_self_map() {
        let e = run_args(&["classify", "--a", "2", "--d", "1"]).unwrap_err();
        assert_eq!(e.code, EXIT_VALIDATION);
        let e = run_args(&["classify", "--a", "1", "--b", "1", "--c", "1", "--d", "1"]).unwrap_err();
        assert_eq!(e.code, EXIT_VALIDATION);
    }

    #[test]
    fn gram_examples() {
        let v = json(&["gram", "--beta", "0", "--alpha", "0.5,0", "--n", "12"]);
        assert!(v["max_out_of_band"].as_f64().unwrap() < 1e-10);
        let v = json(&["gram", "--beta", "0", "--alpha", "0,0", "--n", "6"]);
        assert_eq!(v["max_out_of_band"].as_f64(), Some(0.0));
        let v = json(&["gram", "--beta", "-0.5", "--alpha", "0.5,0", "--n", "6", "--dim", "512"]);
        assert!(v["column0_deviation"].as_f64().unwrap() < 1e-8);
        assert_eq!(
            run_args(&["gram", "--beta", "-0.5", "--alpha", "0.5", "--n", "6"]).unwrap_err().code,
            EXIT_VALIDATION
        );
    }

    #[test]
    fn csym_rotation_reaches_zero() {
        let v = json(&["csym", "--symbol", "rotation", "--lambda", "0,1", "--dim", "8", "--iters", "5"]);
        assert!(v["best_residual"].as_f64().unwrap() < 1e-10);
    }

    #[test]
    fn eigencheck_default_block() {
        let v = json(&["eigencheck", "--s", "0.5", "--lambda", "1", "--dim", "64"]);
        assert_eq!(v["block"], 16);
        assert!(v["residual"].as_f64().unwrap() < 1e-12);
    }

    #[test]
    fn symbol_arguments_required() {
        assert_eq!(
            run_args(&["classify", "--symbol", "involution"]).unwrap_err().code,
            EXIT_VALIDATION
        );
        assert_eq!(
            run_args(&["classify", "--symbol", "elliptic", "--alpha", "0.3"]).unwrap_err().code,
            EXIT_VALIDATION
        );
    }

    #[test]
    fn output_is_deterministic() {
        let args = ["csym", "--symbol", "involution", "--alpha", "0.5", "--dim", "8", "--iters", "30", "--seed", "4"];
        assert_eq!(run_args(&args).unwrap(), run_args(&args).unwrap());
    }
}
