//! The `imcalc verify` command: read a problem document, run the selected
//! checks and render a deterministic report.

pub mod args;
pub mod document;
pub mod error;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use clap::Parser;
use imcalc::algebroid::{
    check_axioms, check_morphism_to_line, cotangent_prolongation_unchecked, tangent_prolongation_unchecked,
    LieAlgebroid,
};
use imcalc::cartan::DifferentialForm;
use imcalc::imforms::{check_closure, check_lagrangian, dirac_from_im};
use imcalc::imforms::{check_im_form, IMForm};
use imcalc::linforms::{decompose, lambda_bar_on_frame, linear_form, TotalChart};
use imcalc::multivec::{check_gerstenhaber_derivation, derivation_from_linear, multivector_bar_on_frame};
use imcalc::weil::{dh_w1k, dv_mu, psi};
use imcalc::{CheckReport, Rational, Tag, Violation};

use args::{Cli, Command, Format, Mode, Switch, VerifyArgs};
use document::{parse_document, parse_samples, Candidate, Number, Problem};
use error::{json_offset, CliError};
use report::{AlgebroidSummary, Builder, OracleSummary, OracleVerdict, ReportDocument};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_ORACLE: i32 = 3;

const AXIOMS: [Tag; 2] = [Tag::AxiomAnchor, Tag::AxiomJacobi];
const IM: [Tag; 3] = [Tag::Im1, Tag::Im2, Tag::Im3];

/// Exit code and the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => match cli.command {
            Command::Verify(v) => verify(&v),
        },
        Err(e) if e.use_stderr() => Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: e.render().to_string(),
        },
        Err(e) => Outcome {
            code: EXIT_PASS,
            stdout: e.render().to_string(),
            stderr: String::new(),
        },
    }
}

pub fn verify(args: &VerifyArgs) -> Outcome {
    match verify_report(args) {
        Ok((report, code)) => Outcome {
            code,
            stdout: match args.report {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            },
            stderr: if code == EXIT_ORACLE {
                "imcalc: theorem oracles disagree on a Lie algebroid\n".to_string()
            } else {
                String::new()
            },
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: match args.report {
                Format::Json => report::error_json(&e),
                Format::Text => format!("error: {e}\n"),
            },
            stderr: format!("imcalc: {e}\n"),
        },
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Flags that override the document's `options`.
#[derive(Default)]
pub struct Overrides {
    pub mode: Option<Mode>,
    pub k: Option<usize>,
    pub oracle: Option<bool>,
    pub samples: Option<Vec<Vec<Number>>>,
}

fn verify_report(args: &VerifyArgs) -> Result<(ReportDocument, i32), CliError> {
    let text = read(&args.input)?;
    let problem = parse_document(&text)?.build()?;
    let samples = match &args.samples {
        Some(path) => {
            let s = read(path)?;
            Some(serde_json::from_str(&s).map_err(|e| CliError::Json {
                offset: json_offset(&s, e.line(), e.column()),
                message: format!("samples: {e}"),
            })?)
        }
        None => None,
    };
    let overrides = Overrides {
        mode: args.mode,
        k: args.k,
        oracle: args.oracle.map(|s| s == Switch::On),
        samples,
    };
    evaluate(problem, overrides)
}

fn lib(field: &'static str) -> impl Fn(imcalc::Error) -> CliError {
    move |e| CliError::at(field, e)
}

/// Runs the checks for the resolved mode. Returns the report and exit code.
pub fn evaluate(problem: Problem, overrides: Overrides) -> Result<(ReportDocument, i32), CliError> {
    let a = &problem.algebroid;
    let opts = problem.options;
    let candidate = problem.candidate;
    let mode = overrides
        .mode
        .or(opts.mode)
        .or(candidate.as_ref().map(Candidate::mode))
        .unwrap_or(Mode::Axioms);
    let k = overrides.k.or(opts.k);
    let oracle = overrides.oracle.or(opts.oracle).unwrap_or(true);
    let samples = match overrides.samples.as_ref().map(|s| (s, "--samples")).or(opts.samples.as_ref().map(|s| (s, "options.samples"))) {
        Some((s, field)) => Some(parse_samples(s, a.base_dim(), field)?),
        None => None,
    };

    let mut b = Builder::default();
    let axioms = check_axioms(a);
    b.add("algebroid", &AXIOMS, &axioms);
    let mut verdicts: Vec<OracleVerdict> = Vec::new();

    let k = if mode == Mode::Axioms {
        if let Some(k) = k {
            if k == 0 {
                return Err(CliError::validation("k", "prolongations need k ≥ 1"));
            }
            let t = tangent_prolongation_unchecked(a, k).map_err(lib("k"))?;
            b.add("tangent-prolongation", &AXIOMS, &check_axioms(&t));
            let c = cotangent_prolongation_unchecked(a, k).map_err(lib("k"))?;
            b.add("cotangent-prolongation", &AXIOMS, &check_axioms(&c));
        }
        k
    } else {
        let cand = candidate
            .as_ref()
            .ok_or_else(|| CliError::validation("candidate", format!("mode {} needs a candidate", mode.as_str())))?;
        if cand.mode() != mode {
            return Err(CliError::validation(
                "candidate",
                format!("candidate of type {} cannot be checked in mode {}", cand.mode().as_str(), mode.as_str()),
            ));
        }
        if let Some(k) = k.filter(|&k| k != cand.k()) {
            return Err(CliError::validation("k", format!("requested {k}, candidate has {}", cand.k())));
        }
        match cand {
            Candidate::ImForm(im) => {
                im_form(&mut b, &mut verdicts, im, oracle, samples.as_deref())?;
            }
            Candidate::Multivector(p) => {
                let report = check_gerstenhaber_derivation(a, &derivation_from_linear(p)).map_err(lib("candidate"))?;
                b.add("candidate", &[Tag::R1, Tag::R2, Tag::R3], &report);
                if oracle {
                    let bar = multivector_bar_on_frame(p, a, p.k()).map_err(lib("candidate"))?;
                    let morphism = check_morphism_to_line(bar.algebroid(), &bar).map_err(lib("candidate"))?;
                    b.add("prolongation", &[Tag::Morphism], &morphism);
                    verdicts.push(OracleVerdict { check: "DERIVATION", passed: report.passed() });
                    verdicts.push(OracleVerdict { check: "MORPHISM", passed: morphism.passed() });
                }
            }
            Candidate::Weil(l) => weil(&mut b, &mut verdicts, l, a, oracle)?,
        }
        Some(cand.k())
    };

    let mut code = EXIT_PASS;
    let oracle_summary = (!verdicts.is_empty()).then(|| {
        let agree = verdicts.iter().all(|v| v.passed == verdicts[0].passed);
        let note = if agree {
            None
        } else if axioms.passed() {
            code = EXIT_ORACLE;
            Some("theorem oracles disagree on a Lie algebroid".to_string())
        } else {
            Some("the algebroid axioms fail, so the equivalence is not guaranteed".to_string())
        };
        OracleSummary { agree, verdicts, note }
    });
    if code == EXIT_PASS && b.failed() {
        code = EXIT_FAIL;
    }
    let passed = !b.failed();
    let (verdicts, witnesses) = b.sorted_witnesses();
    let report = ReportDocument {
        mode: mode.as_str(),
        k,
        algebroid: AlgebroidSummary {
            name: a.name().to_string(),
            base: a.base_chart().names().map(str::to_string).collect(),
            frame: a.frame_names().to_vec(),
        },
        passed,
        verdicts,
        witnesses,
        oracle: oracle_summary,
    };
    Ok((report, code))
}

fn im_form(
    b: &mut Builder,
    verdicts: &mut Vec<OracleVerdict>,
    im: &IMForm,
    oracle: bool,
    samples: Option<&[Vec<Rational>]>,
) -> Result<(), CliError> {
    let a = im.algebroid();
    let report = check_im_form(im);
    b.add("candidate", &IM, &report);
    let im_ok = !IM.iter().any(|&t| report.has(t));
    let extra = [Tag::NuExtra1, Tag::NuExtra2];
    if im_ok {
        b.add("candidate", &extra, &report);
    } else {
        b.skip("candidate", &extra);
    }
    if oracle {
        let l = linear_form(im.forms(), &TotalChart::of(a)).map_err(lib("candidate"))?;
        let bar = lambda_bar_on_frame(&l, a, im.k()).map_err(lib("candidate"))?;
        let morphism = check_morphism_to_line(bar.algebroid(), &bar).map_err(lib("candidate"))?;
        b.add("prolongation", &[Tag::Morphism], &morphism);
        verdicts.push(OracleVerdict { check: "IM", passed: im_ok });
        verdicts.push(OracleVerdict { check: "MORPHISM", passed: morphism.passed() });
    }
    let dirac = [Tag::Isotropy, Tag::Rank, Tag::Closure];
    match samples {
        Some(samples) if im.k() == 2 => {
            let d = dirac_from_im(im).map_err(lib("candidate"))?;
            b.add("dirac", &dirac[..2], &check_lagrangian(&d, samples));
            b.add("dirac", &dirac[2..], &check_closure(&d, samples));
        }
        Some(_) => b.skip("dirac", &dirac),
        None => {}
    }
    Ok(())
}

fn weil(
    b: &mut Builder,
    verdicts: &mut Vec<OracleVerdict>,
    l: &DifferentialForm,
    a: &LieAlgebroid,
    oracle: bool,
) -> Result<(), CliError> {
    let k = l.degree();
    let dh = dh_w1k(&psi(l, a).map_err(lib("candidate"))?).map_err(lib("candidate"))?;
    b.add("candidate", &[Tag::Dh0, Tag::Dh1, Tag::Dh2], &dh.report());

    let forms = decompose(l, &TotalChart::of(a), k).map_err(lib("candidate"))?;
    let lhs = psi(&l.d(), a).map_err(lib("candidate"))?;
    let rhs = dv_mu(&forms.nu, a).map_err(lib("candidate"))?.neg();
    let mut differential = CheckReport::default();
    for x in 0..a.rank() {
        let mut v = Violation::new(Tag::PsiDifferential, vec![x]);
        for (part, res) in [("0", lhs.comp0(x).sub(rhs.comp0(x))), ("1", lhs.comp1(x).sub(rhs.comp1(x)))] {
            for (idx, p) in res.terms() {
                v = v.with_residual(format!("{part}:{}", basis(&res, idx)), p.clone());
            }
        }
        if !v.residuals.is_empty() {
            differential.push(v);
        }
    }
    b.add("weil", &[Tag::PsiDifferential], &differential);

    if oracle {
        let im = IMForm::new(a, forms).map_err(lib("candidate"))?;
        let report = check_im_form(&im);
        b.add("im-form", &IM, &report);
        let bar = lambda_bar_on_frame(l, a, k).map_err(lib("candidate"))?;
        let morphism = check_morphism_to_line(bar.algebroid(), &bar).map_err(lib("candidate"))?;
        b.add("prolongation", &[Tag::Morphism], &morphism);
        verdicts.push(OracleVerdict { check: "IM", passed: !IM.iter().any(|&t| report.has(t)) });
        verdicts.push(OracleVerdict { check: "MORPHISM", passed: morphism.passed() });
        verdicts.push(OracleVerdict { check: "DH", passed: dh.is_zero() });
    }
    Ok(())
}

fn basis(f: &DifferentialForm, idx: &[usize]) -> String {
    if idx.is_empty() {
        return "1".to_string();
    }
    let names: Vec<&str> = f.chart().names().collect();
    idx.iter().map(|&i| format!("d{}", names[i])).collect::<Vec<_>>().join("^")
}
