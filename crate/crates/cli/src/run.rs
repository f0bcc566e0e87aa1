//! One function per subcommand, each turning a model into a report.

use std::sync::Arc;
use std::time::Instant;

use serde_json::json;
use tannaka::base_change::RingMap;
use tannaka::category::{check_category, check_functor, LinearFunctor};
use tannaka::coalgebroid::{check_coalgebroid, check_comodule, is_comodule_map, Coalgebroid};
use tannaka::flmod::{check_fl_object, fl_hom_space, fl_isomorphism, fl_tensor, fl_to_category};
use tannaka::modules::is_free_over_local;
use tannaka::monoidal::{
    check_antipode, check_bialgebroid, check_monoidal_fiber, fusion_operators, induced_antipode, induced_bialgebroid, Fusion,
};
use tannaka::recognition::{
    check_condition_i, check_condition_ii, check_condition_iii, RecognitionOptions, RecognitionReport, Verdict as RVerdict,
    Witness,
};
use tannaka::reconstruct::{base_change_comparison, carrier_rank, counit_comparison, reconstruct, ComparisonVerdict};
use tannaka::report::CheckReport;
use tannaka::{Error, Scalar};

use crate::dto::Document;
use crate::export;
use crate::model::{ring_name, Model};
use crate::report::{CheckRecord, Report, Verdict, WitnessRecord};
use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Reconstruct,
    Counit,
    Recognize,
    Fl,
    Basechange,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Reconstruct => "reconstruct",
            Command::Counit => "counit",
            Command::Recognize => "recognize",
            Command::Fl => "fl",
            Command::Basechange => "basechange",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Largest set enumerated by a single search.
    pub bound: Option<usize>,
}

/// A report and, for commands that produce one, a document to export.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub export: Option<Document>,
}

pub fn run(command: Command, model: &Model, options: &RunOptions) -> Result<Outcome> {
    let start = Instant::now();
    let mut report = Report::new(command.name());
    let export = match command {
        Command::Check => {
            check(model, &mut report);
            None
        }
        Command::Reconstruct => run_reconstruct(model, &mut report)?,
        Command::Counit => {
            counit(model, &mut report)?;
            None
        }
        Command::Recognize => {
            recognize(model, options, &mut report)?;
            None
        }
        Command::Fl => run_fl(model, options, &mut report)?,
        Command::Basechange => basechange(model, &mut report)?,
    };
    report.timing_ms = start.elapsed().as_millis() as u64;
    Ok(Outcome { report, export })
}

fn require<'a, T>(v: Option<&'a T>, section: &str, command: Command) -> Result<&'a T> {
    v.ok_or_else(|| CliError::parse(section, format!("missing section, required by {}", command.name())))
}

/// Core errors during a run: unsupported input aborts, anything else is a
/// failed check.
fn failure(report: &mut Report, id: &str, e: Error) -> Result<()> {
    match e {
        Error::Unsupported(m) => Err(CliError::Unsupported(m)),
        other => {
            report.push(CheckRecord::failed(id, "construction", id, other.to_string()));
            Ok(())
        }
    }
}

fn show(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn check(model: &Model, report: &mut Report) {
    if let Some(c) = &model.category {
        report.push_report("category", &check_category(c));
    }
    if let Some(w) = &model.functor {
        report.push_report("functor", &check_functor(w));
    }
    if let Some(mf) = &model.monoidal {
        report.push_report("monoidal", &check_monoidal_fiber(mf));
    }
    if let Some(c) = &model.coalgebroid {
        report.push_report("coalgebroid", &check_coalgebroid(c));
    }
    if let Some(b) = &model.bialgebroid {
        report.push_report("bialgebroid", &check_bialgebroid(&b.bialgebroid, b.commutative));
        if let Some(s) = &b.antipode {
            report.push_report("antipode", &check_antipode(&b.bialgebroid, s));
        }
    }
    for (k, m) in model.comodules.iter().enumerate() {
        let mut r = check_comodule(&m.comodule);
        if let Some(phi) = &m.map {
            let regular = m.comodule.coalgebroid().regular_comodule();
            if !is_comodule_map(&m.comodule, &regular, phi) {
                r.fail("comodule-map", format!("comodules[{k}].map"), "not a comodule map into the coalgebroid");
            }
        }
        report.push_report(&format!("comodule[{k}]"), &r);
    }
    if let Some(w) = &model.functor {
        for (k, d) in model.cokernels.iter().enumerate() {
            let mut r = CheckReport::new();
            for (check, detail) in tannaka::recognition::check_cokernel_declaration(w, d) {
                r.fail(&check, format!("cokernels[{k}]"), detail);
            }
            report.push_report(&format!("cokernel[{k}]"), &r);
        }
    }
    if let Some(fl) = &model.fl {
        for x in &fl.objects {
            report.push_report(&format!("fl[{}]", x.name), &check_fl_object(x));
        }
    }
    if report.checks.is_empty() {
        report.push(CheckRecord {
            id: "document".into(),
            verdict: Verdict::Unverified,
            witnesses: Vec::new(),
            notes: vec!["nothing to check".into()],
        });
    }
}

fn carrier_results(report: &mut Report, p: &tannaka::reconstruct::CoendPresentation) {
    let s = p.carrier().structure();
    report.result("ambient", p.ambient());
    report.result("rank", carrier_rank(p));
    report.result("carrier", json!({"free_rank": s.free_rank, "torsion": s.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>()}));
}

fn fusion_record(id: &str, f: &Fusion) -> CheckRecord {
    let mut witnesses = Vec::new();
    if let Some(k) = &f.kernel_witness {
        witnesses.push(WitnessRecord { check: "injective".into(), at: show(k), detail: "nonzero element in the kernel".into() });
    }
    if let Some(j) = f.cokernel_witness {
        witnesses.push(WitnessRecord {
            check: "surjective".into(),
            at: format!("target coordinate {j}"),
            detail: "basis element outside the image".into(),
        });
    }
    let verdict = if witnesses.is_empty() { Verdict::Pass } else { Verdict::Fail };
    CheckRecord { id: id.into(), verdict, witnesses, notes: Vec::new() }
}

fn run_reconstruct(model: &Model, report: &mut Report) -> Result<Option<Document>> {
    let w = require(model.functor.as_ref(), "functor", Command::Reconstruct)?;
    let rec = match reconstruct(w) {
        Ok(r) => r,
        Err(e) => {
            failure(report, "reconstruction", e)?;
            return Ok(None);
        }
    };
    report.push_report("coalgebroid", &rec.report);
    carrier_results(report, &rec.coend);
    let mut bi_dto = None;
    if let Some(mf) = &model.monoidal {
        report.push_report("monoidal", &check_monoidal_fiber(mf));
        let commutative = mf.symmetry.is_some();
        match induced_bialgebroid(&rec.coend, &rec.coalgebroid, mf) {
            Err(e) => failure(report, "bialgebroid", e)?,
            Ok(bi) => {
                report.push_report("bialgebroid", &check_bialgebroid(&bi, commutative));
                match fusion_operators(&bi) {
                    Err(e) => failure(report, "fusion", e)?,
                    Ok(f) => {
                        report.push(fusion_record("fusion-right", &f.right));
                        report.push(fusion_record("fusion-left", &f.left));
                        report.result("hopf", f.is_hopf());
                    }
                }
                let mut antipode = None;
                if mf.duality.is_some() {
                    match induced_antipode(&rec.coend, mf) {
                        Err(e) => failure(report, "antipode", e)?,
                        Ok(s) => {
                            report.push_report("antipode", &check_antipode(&bi, &s));
                            antipode = Some(s);
                        }
                    }
                }
                bi_dto = Some(export::bialgebroid(&bi, commutative, antipode.as_ref()));
            }
        }
    }
    let doc = export::coalgebroid_document(&rec.coalgebroid, bi_dto);
    report.result("coalgebroid", doc.coalgebroid.clone());
    Ok(Some(doc))
}

fn counit(model: &Model, report: &mut Report) -> Result<()> {
    let c: Arc<Coalgebroid> = match (&model.coalgebroid, &model.functor) {
        (Some(c), _) => c.clone(),
        (None, Some(w)) => match reconstruct(w) {
            Ok(r) => r.coalgebroid,
            Err(e) => return failure(report, "comparison", e),
        },
        (None, None) => return Err(CliError::parse("coalgebroid", "missing section, required by counit")),
    };
    let mut family = Vec::with_capacity(model.comodules.len());
    for (k, m) in model.comodules.iter().enumerate() {
        let phi = m.map.clone().ok_or_else(|| CliError::parse(format!("comodules[{k}].map"), "required by counit"))?;
        family.push((m.comodule.clone(), phi));
    }
    let cmp = match counit_comparison(&c, &family) {
        Ok(cmp) => cmp,
        Err(e) => return failure(report, "comparison", e),
    };
    let (name, record) = match &cmp.verdict {
        ComparisonVerdict::Iso => ("iso", CheckRecord::from_report("comparison", &CheckReport::new())),
        ComparisonVerdict::EpiNotMono { witness } => (
            "epi_not_mono",
            CheckRecord::failed("comparison", "injective", &show(witness), "nonzero element of the colimit maps to zero"),
        ),
        ComparisonVerdict::NotEpi { witness } => (
            "not_epi",
            CheckRecord::failed("comparison", "surjective", &show(witness), "element of the coalgebroid outside the image"),
        ),
    };
    report.push(record);
    report.result("verdict", name);
    report.result("connected_pairs", cmp.connected_pairs);
    report.result("family", family.len());
    Ok(())
}

fn witness_record(w: &LinearFunctor, x: &Witness) -> WitnessRecord {
    let o = |a: usize| w.category().objects()[a].clone();
    let rec = |check: &str, at: String, detail: String| WitnessRecord { check: check.into(), at, detail };
    match x {
        Witness::NotFaithful { source, target, element } => rec(
            "faithful",
            format!("Hom({},{})", o(*source), o(*target)),
            format!("nonzero {} is sent to zero", show(element)),
        ),
        Witness::IsoNotReflected { source, target, element } => rec(
            "reflects-isos",
            format!("Hom({},{})", o(*source), o(*target)),
            format!("{} is sent to an isomorphism but has no inverse", show(element)),
        ),
        Witness::EmptyCategory => rec("nonempty", "objects".into(), "the category has no objects".into()),
        Witness::NoCone { left, right } => rec(
            "cone",
            format!("(({}, {}), ({}, {}))", o(left.object), show(&left.element), o(right.object), show(&right.element)),
            "no object maps to both".into(),
        ),
        Witness::NoEqualizer { source, target, difference } => rec(
            "equalizer",
            format!("({}, {}) → {}", o(source.object), show(&source.element), o(*target)),
            format!("difference {} is equalized by nothing", show(difference)),
        ),
        Witness::BadCokernel { declaration, check, detail } => rec(check, format!("cokernels[{declaration}]"), detail.clone()),
        Witness::UndeclaredCokernel { source, target, element } => rec(
            "cokernel-declared",
            format!("Hom({},{})", o(*source), o(*target)),
            format!("{} has a free cokernel but no declared cokernel", show(element)),
        ),
    }
}

fn recognition_record(id: &str, w: &LinearFunctor, r: &RecognitionReport) -> CheckRecord {
    CheckRecord {
        id: id.into(),
        verdict: match r.verdict {
            RVerdict::Pass => Verdict::Pass,
            RVerdict::Fail => Verdict::Fail,
            RVerdict::Unverified => Verdict::Unverified,
        },
        witnesses: r.witnesses.iter().map(|x| witness_record(w, x)).collect(),
        notes: r.notes.clone(),
    }
}

fn recognize(model: &Model, options: &RunOptions, report: &mut Report) -> Result<()> {
    let w = require(model.functor.as_ref(), "functor", Command::Recognize)?;
    let mut opts = RecognitionOptions::default();
    if let Some(b) = options.bound {
        opts.bound = b;
    }
    opts.local_ideal = model.local_ideal.clone();
    if let Some(a) = model.all_elements {
        opts.all_elements = a;
    }
    let reports = [
        check_condition_i(w, &opts),
        check_condition_ii(w, &opts),
        check_condition_iii(w, &model.cokernels, &opts),
    ];
    let mut exhaustive = serde_json::Map::new();
    for r in &reports {
        report.push(recognition_record(&format!("condition-{}", r.condition), w, r));
        exhaustive.insert(format!("condition-{}", r.condition), r.exhaustive.into());
    }
    report.result("exhaustive", exhaustive);
    report.result("bound", opts.bound);
    Ok(())
}

fn run_fl(model: &Model, options: &RunOptions, report: &mut Report) -> Result<Option<Document>> {
    let fl = require(model.fl.as_ref(), "fl", Command::Fl)?;
    let bound = options.bound.unwrap_or(RecognitionOptions::default().bound);
    let mut all_pass = true;
    for x in &fl.objects {
        let r = check_fl_object(x);
        all_pass &= r.is_pass();
        report.push_report(&format!("fl[{}]", x.name), &r);
    }
    report.result("ring", ring_name(&fl.objects.first().map_or_else(|| model.ring.clone(), |x| x.ring())));
    report.result("objects", fl.objects.iter().map(|x| x.name.clone()).collect::<Vec<_>>());
    if !all_pass {
        return Ok(None);
    }
    let mut homs = Vec::new();
    for x in &fl.objects {
        for y in &fl.objects {
            match fl_hom_space(x, y) {
                Ok(h) => {
                    let s = h.module.structure();
                    homs.push(json!({
                        "source": x.name, "target": y.name, "free_rank": s.free_rank,
                        "torsion": s.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                    }));
                }
                Err(e) => failure(report, &format!("hom[{},{}]", x.name, y.name), e)?,
            }
        }
    }
    report.result("homs", homs);
    let mut tensor = Vec::new();
    let mut tensor_check = CheckReport::new();
    for x in &fl.objects {
        for y in &fl.objects {
            match fl_tensor(x, y) {
                Ok(t) => {
                    let tr = check_fl_object(&t);
                    for v in tr.violations {
                        tensor_check.fail(&v.check, format!("{}⊗{} {}", x.name, y.name, v.at), v.detail);
                    }
                    let mut product = None;
                    for z in &fl.objects {
                        match fl_isomorphism(&t, z, bound) {
                            Ok(Some(_)) => {
                                product = Some(z.name.clone());
                                break;
                            }
                            Ok(None) => {}
                            Err(e) => tensor_check.unverified(format!("{}⊗{} against {}: {e}", x.name, y.name, z.name)),
                        }
                    }
                    tensor.push(json!({"left": x.name, "right": y.name, "rank": t.rank, "product": product}));
                }
                Err(e) => tensor_check.fail("fl-tensor", format!("{}⊗{}", x.name, y.name), e.to_string()),
            }
        }
    }
    report.push_report("fl-tensor", &tensor_check);
    report.result("tensor", tensor);
    let w = match fl_to_category(&fl.objects, fl.p, fl.n) {
        Ok((_, w)) => w,
        Err(e) => {
            failure(report, "fl-category", e)?;
            return Ok(None);
        }
    };
    match reconstruct(&w) {
        Err(e) => failure(report, "reconstruction", e)?,
        Ok(rec) => {
            report.push_report("coalgebroid", &rec.report);
            carrier_results(report, &rec.coend);
            let ring = w.ring();
            let ideal = vec![vec![ring.from_i64(fl.p as i64)]];
            for (id, m) in [("flat-source", rec.coalgebroid.source_module()), ("flat-target", rec.coalgebroid.target_module())] {
                let mut r = CheckReport::new();
                match is_free_over_local(&m, &ideal) {
                    Ok(Some(_)) => {}
                    Ok(None) => r.fail("free", id, "not free over W_n"),
                    Err(e) => r.unverified(e.to_string()),
                }
                report.push_report(id, &r);
            }
        }
    }
    Ok(Some(export::functor_document(&w)))
}

fn basechange(model: &Model, report: &mut Report) -> Result<Option<Document>> {
    let w = require(model.functor.as_ref(), "functor", Command::Basechange)?;
    let target = require(model.base_change_target.as_ref(), "base_change", Command::Basechange)?;
    let h = RingMap::new(w.ring(), target).map_err(|e| match e {
        Error::Unsupported(m) => CliError::Unsupported(m),
        other => CliError::parse("base_change.target", other.to_string()),
    })?;
    report.result("source", ring_name(w.ring()));
    report.result("target", ring_name(target));
    match base_change_comparison(&h, w) {
        Err(e) => {
            failure(report, "base-change", e)?;
            Ok(None)
        }
        Ok(cmp) => {
            report.push_report("base-change", &cmp.report);
            report.result("ambient", cmp.recomputed.ambient());
            report.result("iso", export::matrix(&cmp.iso));
            Ok(Some(export::coalgebroid_document(&cmp.recomputed, None)))
        }
    }
}
