use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context as _, Result};
use arrangement_core::catalog::{
    arrangement_to_json, deformation_sextic, fermat, hesse_cubic, load_arrangement_in, tau, yoshinaga,
    yoshinaga_profile, Arrangement, DeformationParams,
};
use arrangement_core::engine::{
    check_noncontainment, fat_graded_piece, graded_containment, locus_scheme, witness_search,
    zeros_among, CheckOptions, FatPointScheme, Verdict, WitnessReport,
};
use arrangement_core::geometry::{incidence_table, SingularLocus};
use arrangement_core::numberfield::{FieldSpec, Rational};
use arrangement_core::polyring::{expand_product, proportionality, HomogeneousForm, TermRecord};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::args::{CheckArgs, SchemeSelector, SearchArgs, SingularArgs, SourceArgs, SubsetMode, VerifyArgs, WitnessSelector};
use crate::reference::{compare_triples, match_lines, parse_triple_table, reference_lines, TripleComparison, TRIPLE_TABLE};
use crate::report::{ArrangementSummary, Report};

const DEFAULT_CONDUCTOR: u32 = 6;

/// A degree and its terms, the file format for witnesses and search results.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormFile {
    pub degree: u32,
    pub terms: Vec<TermRecord>,
}

impl FormFile {
    pub fn new(f: &HomogeneousForm) -> Self {
        FormFile {
            degree: f.degree(),
            terms: f.to_records(),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| anyhow!("bad rational {s:?}: {e}"))
}

fn require_conductor(actual: u32, requested: Option<u32>) -> Result<()> {
    match requested {
        Some(n) if n != actual => bail!("arrangement lives in Q(ζ_{actual}) but --field-conductor is {n}"),
        _ => Ok(()),
    }
}

pub fn load_source(src: &SourceArgs, conductor: Option<u32>) -> Result<Arrangement> {
    if let Some(path) = &src.input {
        return Ok(load_arrangement_in(path, conductor.unwrap_or(DEFAULT_CONDUCTOR))?);
    }
    let a = match src.name.as_deref().unwrap_or("yoshinaga") {
        "yoshinaga" => yoshinaga(&DeformationParams::new(parse_rational(&src.c)?)?)?,
        "fermat" => fermat(src.n.ok_or_else(|| anyhow!("fermat needs --n"))?)?,
        other => bail!("unknown arrangement {other:?}; expected yoshinaga or fermat"),
    };
    require_conductor(a.field().conductor(), conductor)?;
    Ok(a)
}

/// True for the `c = 15` arrangement that the bundled data describes.
pub fn is_reference_yoshinaga(a: &Arrangement) -> bool {
    let p = a.provenance();
    p.name == "yoshinaga" && p.params.get("c").map(String::as_str) == Some("15")
}

pub fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// An arrangement with its singular locus.
pub struct Context {
    pub arrangement: Arrangement,
    pub locus: SingularLocus,
}

impl Context {
    pub fn new(arrangement: Arrangement) -> Result<Self> {
        let locus = arrangement.singular_locus()?;
        Ok(Context { arrangement, locus })
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        self.arrangement.field()
    }

    pub fn summary(&self) -> ArrangementSummary {
        ArrangementSummary::new(&self.arrangement, self.locus.profile())
    }

    pub fn scheme(&self, selector: &SchemeSelector) -> Result<FatPointScheme> {
        let spec = self.spec();
        Ok(match selector {
            SchemeSelector::AllSingular => locus_scheme(&self.locus, spec, "all-singular", None)?,
            SchemeSelector::TripleOnly => locus_scheme(&self.locus, spec, "triple-only", Some(3))?,
            SchemeSelector::TriplePlusDoubles(indices) => {
                let doubles: Vec<_> = self.locus.with_multiplicity(2).collect();
                let chosen: Vec<usize> = match indices {
                    None => (0..doubles.len()).collect(),
                    Some(list) => list.clone(),
                };
                let mut points: Vec<_> = self.locus.with_multiplicity(3).map(|p| p.point.clone()).collect();
                for &i in &chosen {
                    let p = doubles
                        .get(i)
                        .ok_or_else(|| anyhow!("double point index {i} out of range (0..{})", doubles.len()))?;
                    points.push(p.point.clone());
                }
                let label = match indices {
                    None => "triple-plus-doubles:all".to_string(),
                    Some(list) => format!(
                        "triple-plus-doubles:{}",
                        list.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
                    ),
                };
                FatPointScheme::reduced(spec, &label, points)?
            }
        })
    }

    /// The unique cubic through the double points, normalized by its RREF pivot.
    pub fn double_point_cubic(&self) -> Result<HomogeneousForm> {
        let doubles = locus_scheme(&self.locus, self.spec(), "double", Some(2))?;
        if doubles.is_empty() {
            bail!("the arrangement has no double points");
        }
        let piece = fat_graded_piece(&doubles, 3);
        match piece.dim() {
            1 => Ok(piece.forms().remove(0)),
            k => bail!("cubics through the {} double points form a space of dimension {k}", doubles.len()),
        }
    }

    pub fn witness(&self, selector: &WitnessSelector) -> Result<HomogeneousForm> {
        Ok(match selector {
            WitnessSelector::Lines => self.arrangement.defining_form(),
            WitnessSelector::LinesTimesCubic => self.arrangement.defining_form().multiply(&self.double_point_cubic()?),
            WitnessSelector::File(path) => {
                let file: FormFile = serde_json::from_str(&read_text(path)?)
                    .with_context(|| format!("parsing witness {}", path.display()))?;
                HomogeneousForm::from_records(self.spec(), &file.terms, file.degree)?
            }
        })
    }

    /// Triple points as sets of 1-based reference line numbers, if every
    /// reference line is one of the arrangement's lines.
    pub fn triples_in_reference_numbering(&self, reference: &Arrangement) -> Option<Vec<BTreeSet<usize>>> {
        let matches = match_lines(reference, &self.arrangement);
        let mut number_of = vec![0usize; self.arrangement.len()];
        for (r, m) in matches.iter().enumerate() {
            number_of[(*m)?] = r + 1;
        }
        if number_of.contains(&0) {
            return None;
        }
        Some(
            incidence_table(&self.locus, 3)
                .line_sets()
                .into_iter()
                .map(|s| s.into_iter().map(|i| number_of[i]).collect())
                .collect(),
        )
    }
}

pub fn build(src: &SourceArgs, conductor: Option<u32>) -> Result<(Arrangement, String)> {
    let a = load_source(src, conductor)?;
    let json = arrangement_to_json(&a);
    Ok((a, json))
}

pub struct SingularOutput {
    pub json: String,
    pub csv: Option<String>,
    pub profile_line: String,
    pub comparison: Option<TripleComparison>,
}

pub fn profile_line(profile: &BTreeMap<usize, usize>) -> String {
    profile
        .iter()
        .rev()
        .map(|(m, n)| format!("t{m}={n}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn singular(args: &SingularArgs, conductor: Option<u32>) -> Result<SingularOutput> {
    let ctx = Context::new(load_source(&args.source, conductor)?)?;
    let json = serde_json::to_string_pretty(&json!({
        "profile": ctx.locus.profile(),
        "points": ctx.locus.to_records(),
    }))?;
    let mut out = SingularOutput {
        json,
        csv: None,
        profile_line: profile_line(&ctx.locus.profile()),
        comparison: None,
    };
    if args.incidence {
        out.csv = Some(incidence_table(&ctx.locus, 3).to_csv(&ctx.arrangement.labels()));
        if is_reference_yoshinaga(&ctx.arrangement) {
            out.comparison = Some(appendix_comparison(&ctx, args.line_list.as_deref(), args.appendix.as_deref())?);
        }
    }
    Ok(out)
}

pub fn appendix_comparison(ctx: &Context, line_list: Option<&Path>, appendix: Option<&Path>) -> Result<TripleComparison> {
    let list_text = line_list.map(read_text).transpose()?;
    let reference = reference_lines(list_text.as_deref())?;
    let table_text = match appendix {
        Some(p) => read_text(p)?,
        None => TRIPLE_TABLE.to_string(),
    };
    let table = parse_triple_table(&table_text)?;
    let computed = ctx
        .triples_in_reference_numbering(&reference)
        .ok_or_else(|| anyhow!("reference line list does not match the constructed lines"))?;
    Ok(compare_triples(&table, &computed, reference.len()))
}

pub fn comparison_line(c: &TripleComparison) -> String {
    format!(
        "{}/{} triples match appendix ({} with line numbers taken literally)",
        c.matched_after_relabeling, c.computed, c.direct_matches
    )
}

/// Runs a witness check and reports whether the verdict equals `--expect`.
pub fn check(args: &CheckArgs, conductor: Option<u32>) -> Result<(Report, bool)> {
    let expected: Verdict = args.expect.parse()?;
    let ctx = Context::new(load_source(&args.source, conductor)?)?;
    let mut report = Report {
        arrangement: Some(ctx.summary()),
        ..Report::default()
    };
    let scheme = ctx.scheme(&args.scheme)?;
    let witness = ctx.witness(&args.witness)?;
    let options = CheckOptions {
        symbolic_dimension: !args.no_symbolic_dim,
    };
    let w = report.timed("check", || check_noncontainment(&scheme, args.m, args.r, &witness, &options))?;
    let ok = report.check("verdict", expected, w.verdict);
    report.witnesses.push(w);
    Ok((report, ok))
}

pub fn search(args: &SearchArgs, conductor: Option<u32>) -> Result<Report> {
    let ctx = Context::new(load_source(&args.source, conductor)?)?;
    let scheme = ctx.scheme(&args.scheme)?;
    let mut report = Report {
        arrangement: Some(ctx.summary()),
        ..Report::default()
    };
    let found = report.timed("witness-search", || witness_search(&scheme, args.m, args.r, args.degree))?;
    report.details = Some(json!({
        "scheme": scheme.name(),
        "m": args.m,
        "r": args.r,
        "degree": args.degree,
        "complement_dim": found.len(),
        "forms": found.iter().map(FormFile::new).collect::<Vec<_>>(),
    }));
    Ok(report)
}

fn noncontainment(
    report: &mut Report,
    name: &str,
    scheme: &FatPointScheme,
    witness: &HomogeneousForm,
    informative: bool,
) -> Result<WitnessReport> {
    let w = report.timed(name, || {
        check_noncontainment(scheme, 3, 2, witness, &CheckOptions { symbolic_dimension: true })
    })?;
    if informative {
        report.info(name, Verdict::NonContainment, w.verdict);
    } else {
        report.check(name, Verdict::NonContainment, w.verdict);
    }
    report.witnesses.push(w.clone());
    Ok(w)
}

/// Every listed check for Yoshinaga's arrangement at parameter `c`. Checks
/// tied to the bundled data run only for `c = 15`; at other parameters the
/// non-containment verdicts are reported without being asserted.
pub fn verify_paper(args: &VerifyArgs) -> Result<Report> {
    let c = parse_rational(&args.c)?;
    let reference_c = c == Rational::from_integer(15.into());
    let mut report = Report::default();
    let arrangement = report.timed("build", || yoshinaga(&DeformationParams::new(c.clone())?))?;
    let ctx = report.timed("singular-locus", || Context::new(arrangement))?;
    let spec = ctx.spec().clone();
    report.arrangement = Some(ctx.summary());

    report.check("profile", profile_line(&yoshinaga_profile()), profile_line(&ctx.locus.profile()));
    let n = ctx.arrangement.len();
    report.check("pair-count", n * (n - 1) / 2, ctx.locus.pair_count());

    let sextic = deformation_sextic(&spec, &c);
    let expected = expand_product(&spec, &[sextic.clone(), tau(&sextic, 1), tau(&sextic, 2)]);
    let proportional = report.timed("construction-identity", || {
        proportionality(&ctx.arrangement.defining_form(), &expected).is_some()
    });
    report.check("construction-identity", true, proportional);

    let mut details = serde_json::Map::new();
    if reference_c {
        let list_text = args.line_list.as_deref().map(read_text).transpose()?;
        let reference = reference_lines(list_text.as_deref())?;
        let matches = match_lines(&reference, &ctx.arrangement);
        let found = matches.iter().filter(|m| m.is_some()).count();
        report.check("line-list", format!("{n}/{n}"), format!("{found}/{}", reference.len()));
        details.insert(
            "line_list_to_constructed".into(),
            json!(matches
                .iter()
                .enumerate()
                .map(|(i, m)| (reference.lines()[i].label.clone(), m.map(|k| ctx.arrangement.lines()[k].label.clone())))
                .collect::<BTreeMap<_, _>>()),
        );
        match appendix_comparison(&ctx, args.line_list.as_deref(), args.appendix.as_deref()) {
            Ok(cmp) => {
                report.check("appendix-incidence", "48/48", format!("{}/{}", cmp.matched_after_relabeling, cmp.table_rows.max(cmp.computed)));
                report.info("appendix-literal-numbering", "48/48", format!("{}/48", cmp.direct_matches));
                details.insert("appendix".into(), serde_json::to_value(&cmp)?);
            }
            Err(e) => {
                report.check("appendix-incidence", "48/48", format!("error: {e}"));
            }
        }
    }

    let doubles = locus_scheme(&ctx.locus, &spec, "double", Some(2))?;
    let cubic = if reference_c {
        let cubic = hesse_cubic(&spec);
        let on = zeros_among(&cubic, &doubles).len();
        report.check("cubic-double-points", doubles.len(), on);
        if let Ok(interpolated) = ctx.double_point_cubic() {
            report.check("cubic-unique-through-doubles", true, proportionality(&interpolated, &cubic).is_some());
        } else {
            report.check("cubic-unique-through-doubles", true, false);
        }
        cubic
    } else {
        ctx.double_point_cubic()?
    };
    let triples = locus_scheme(&ctx.locus, &spec, "triple-only", Some(3))?;
    let cubic_on_triples = zeros_among(&cubic, &triples).len();
    details.insert("cubic".into(), json!(cubic.to_string()));
    details.insert("cubic_triple_points".into(), json!(cubic_on_triples));

    let lines = ctx.arrangement.defining_form();
    let lines_cubic = lines.multiply(&cubic);
    let full = locus_scheme(&ctx.locus, &spec, "all-singular", None)?;
    noncontainment(&mut report, "theorem-full-locus", &full, &lines_cubic, !reference_c)?;
    noncontainment(&mut report, "theorem-triple-points", &triples, &lines, !reference_c)?;

    let hesse = Context::new(fermat(3)?)?;
    let hesse_triples = locus_scheme(&hesse.locus, hesse.spec(), "dual-hesse-triples", Some(3))?;
    noncontainment(&mut report, "dual-hesse", &hesse_triples, &hesse.arrangement.defining_form(), false)?;

    let els = report.timed("els-m4-r2-d21", || graded_containment(&full, 4, 2, 21))?;
    report.check("els-m4-r2-d21", true, els);

    let subsets: Vec<Vec<usize>> = match args.subsets {
        SubsetMode::None => Vec::new(),
        SubsetMode::Sampled => (0..doubles.len()).map(|i| vec![i]).collect(),
        SubsetMode::Exhaustive => (1u32..1 << doubles.len())
            .map(|mask| (0..doubles.len()).filter(|i| mask >> i & 1 == 1).collect())
            .collect(),
    };
    for subset in subsets {
        let scheme = ctx.scheme(&SchemeSelector::TriplePlusDoubles(Some(subset)))?;
        let name = format!("intermediate:{}", scheme.name().trim_start_matches("triple-plus-doubles:"));
        let w = report.timed(&name, || {
            check_noncontainment(&scheme, 3, 2, &lines_cubic, &CheckOptions { symbolic_dimension: false })
        })?;
        if reference_c {
            report.check(&name, Verdict::NonContainment, w.verdict);
        } else {
            report.info(&name, Verdict::NonContainment, w.verdict);
        }
    }

    report.details = Some(serde_json::Value::Object(details));
    Ok(report)
}
