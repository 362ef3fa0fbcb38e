//! Named suites running the checkers over a corpus. A suite is a list of
//! independent cases; callers may run them in any order (or in parallel) and
//! merge the reports with [`merge`].

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::abacus::{presentation_completeness, relation_suite_degree, DObj};
use crate::config::{
    boors_axioms, boors_comparison, build_m, collapsed_representable, condition_star, dictionary,
    dual_abacus_inverse, extend_half, extend_sigma_to_d, half_axioms, half_comparison,
    has_invertible_abacus, invertibility, j_upper_star, m_2segal_dictionary, m_comparison,
    map_conditions, p_star_tot, q_lower_star, star_biconditional, top_sections, ts_compat,
    vertical_pointing,
};
use crate::decalage::{counit, dec_map, sd, sd_map, Side};
use crate::fibration::{
    cartesian_on, is_2segal, is_culf, is_left_fibration, is_right_fibration, is_segal, FaceClass,
};
use crate::fixtures::{corpus, identity_map, map_corpus, non_2segal};
use crate::index::IndexCategory;
use crate::presheaf::{record_square, SMap, SSet, Square, SquareNames};
use crate::report::{CheckReport, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Cheatsheet,
    Presentation,
    Star,
    Dictionary,
    Invertibility,
    TotalSpace,
    Boors,
    Pointing,
    HalfAxioms,
    Edgewise,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Cheatsheet,
        Suite::Presentation,
        Suite::Star,
        Suite::Dictionary,
        Suite::Invertibility,
        Suite::TotalSpace,
        Suite::Boors,
        Suite::Pointing,
        Suite::HalfAxioms,
        Suite::Edgewise,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cheatsheet => "cheatsheet",
            Suite::Presentation => "presentation",
            Suite::Star => "star",
            Suite::Dictionary => "dictionary",
            Suite::Invertibility => "invertibility",
            Suite::TotalSpace => "total-space",
            Suite::Boors => "boors",
            Suite::Pointing => "pointing",
            Suite::HalfAxioms => "half-axioms",
            Suite::Edgewise => "edgewise",
        }
    }

    /// What the suite establishes.
    pub fn statement(self) -> &'static str {
        match self {
            Suite::Cheatsheet => "standard facts relating Segal, 2-Segal, fibrations, culf maps and decalage",
            Suite::Presentation => "both presentations of the abacus category hold and generate every hom-set",
            Suite::Star => "condition (★) holds exactly when the unit B → q_* q^* B is invertible",
            Suite::Dictionary => {
                "q_*(F) is a bicomodule configuration iff X, Y are 2-Segal and F is relatively upper 2-Segal"
            }
            Suite::Invertibility => "q_*(F) has invertible abacus maps iff F is invertible",
            Suite::TotalSpace => "M → Δ¹ has 2-Segal total space iff the dictionary conditions hold; B is recovered",
            Suite::Boors => "extension and restriction along j are inverse on pointed total decalages",
            Suite::Pointing => "the pointing axioms make the abacus maps invertible and the splittings compatible",
            Suite::HalfAxioms => "upper stable, Segal rows and horizontal pointing suffice for a half extension",
            Suite::Edgewise => "2-Segal iff the edgewise subdivision is Segal; culf iff its subdivision is a right fibration",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

/// Simplicial sets and maps the suites run over.
#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub spaces: Vec<(String, SSet)>,
    pub maps: Vec<(String, SMap)>,
}

impl Corpus {
    /// Nerves of all posets with at most four elements, a few categories, the
    /// partial monoid, two non-2-Segal skeleta, and the map corpus.
    pub fn standard(trunc: usize) -> Self {
        let mut spaces = corpus(trunc);
        spaces.extend(non_2segal(trunc));
        Corpus {
            spaces,
            maps: map_corpus(trunc),
        }
    }
}

type Run = Box<dyn Fn() -> CheckReport + Send + Sync>;

pub struct Case {
    pub name: String,
    run: Run,
}

impl Case {
    fn new(name: impl Into<String>, run: impl Fn() -> CheckReport + Send + Sync + 'static) -> Self {
        Case {
            name: name.into(),
            run: Box::new(run),
        }
    }

    pub fn run(&self) -> CheckReport {
        let mut r = (self.run)();
        r.name = self.name.clone();
        r
    }
}

/// The report of a suite from the reports of its cases, in case order.
pub fn merge(suite: Suite, reports: Vec<CheckReport>) -> CheckReport {
    let mut report = CheckReport::new(suite.name());
    for r in reports {
        report.absorb(r);
    }
    report.canonicalize();
    report
}

pub fn run(suite: Suite, corpus: &Corpus, trunc: usize) -> CheckReport {
    merge(
        suite,
        cases(suite, corpus, trunc).iter().map(Case::run).collect(),
    )
}

pub fn cases(suite: Suite, corpus: &Corpus, trunc: usize) -> Vec<Case> {
    match suite {
        Suite::Presentation => vec![
            Case::new("relations", move || relation_suite_degree(trunc)),
            Case::new("completeness", move || presentation_completeness(trunc)),
        ],
        Suite::Cheatsheet => cheatsheet_cases(corpus),
        Suite::Star => star_cases(corpus, trunc),
        Suite::Dictionary => map_cases(corpus, dictionary),
        Suite::Invertibility => map_cases(corpus, invertibility),
        Suite::TotalSpace => map_cases(corpus, total_space),
        Suite::Boors => two_segal_cases(corpus, boors_round_trip),
        Suite::Pointing => two_segal_cases(corpus, pointing_consequences),
        Suite::HalfAxioms => half_cases(corpus),
        Suite::Edgewise => edgewise_cases(corpus),
    }
}

fn map_cases(corpus: &Corpus, check: fn(&SMap) -> CheckReport) -> Vec<Case> {
    corpus
        .maps
        .iter()
        .map(|(n, f)| {
            let f = f.clone();
            Case::new(n.clone(), move || check(&f))
        })
        .collect()
}

fn two_segal_cases(corpus: &Corpus, check: fn(&SSet) -> CheckReport) -> Vec<Case> {
    corpus
        .spaces
        .iter()
        .filter(|(_, x)| is_2segal(x, Side::Both).passed())
        .map(|(n, x)| {
            let x = x.clone();
            Case::new(n.clone(), move || check(&x))
        })
        .collect()
}

fn from_error(name: &str, e: crate::Error) -> CheckReport {
    let mut r = CheckReport::new(name);
    r.fail("construction", Witness::new(e.to_string(), Vec::new()));
    r
}

/// The (★) biconditional on `q_*(F)` for every corpus map and on collapsed
/// representables, which fail (★).
fn star_cases(corpus: &Corpus, trunc: usize) -> Vec<Case> {
    let mut out = map_cases(corpus, |f| match q_lower_star(f) {
        Ok(b) => star_biconditional(&b),
        Err(e) => from_error("star", e),
    });
    for (i, j) in [(0, 0), (1, 0), (0, 1)] {
        let o = DObj { i, j };
        if o.degree() as usize <= trunc {
            out.push(Case::new(
                format!("collapsed representable {o}"),
                move || match collapsed_representable(o, trunc) {
                    Ok(b) => {
                        let mut r = star_biconditional(&b);
                        r.note(format!("condition star: {}", condition_star(&b).passed()));
                        r
                    }
                    Err(e) => from_error("star", e),
                },
            ));
        }
    }
    out
}

fn total_space(f: &SMap) -> CheckReport {
    let mut report = m_2segal_dictionary(f);
    let recovered = q_lower_star(f).and_then(|b| m_comparison(&b));
    match recovered {
        Ok(m) => {
            report.absorb(m.validate());
            report.absorb(m.iso_report("recovery"));
        }
        Err(e) => report.absorb(from_error("recovery", e)),
    }
    if let Ok(b) = q_lower_star(f) {
        if let Ok((m, _)) = build_m(&b) {
            let n = |k: usize| f.source.size(&k) + b.size(&DObj { i: 0, j: 0 }) + f.target.size(&k);
            let ok = m.size(&1) == n(1);
            report.record("first level", ok, || {
                Witness::new("size of M_1", Vec::new())
            });
        }
    }
    report
}

/// Extension of `p^* X` against `q_*(id_X)` and restriction back.
pub fn boors_round_trip(x: &SSet) -> CheckReport {
    let mut report = CheckReport::new("boors round trip");
    let a = match p_star_tot(x) {
        Ok(a) => a,
        Err(e) => return CheckReport::precondition("boors round trip", e.to_string()),
    };
    report.absorb(boors_axioms(&a));
    let e = match extend_sigma_to_d(&a) {
        Ok(e) => e,
        Err(e) => {
            report.absorb(from_error("extension", e));
            return report;
        }
    };
    report.note(format!("verified depth {}", e.shape.trunc));
    match boors_comparison(x, &e) {
        Ok(m) => {
            report.absorb(m.validate());
            report.absorb(m.iso_report("comparison with q_*(id)"));
        }
        Err(err) => report.absorb(from_error("comparison with q_*(id)", err)),
    }
    let back = j_upper_star(&e);
    let trunc = e.shape.trunc - 1;
    let ok = matches!((&back, a.truncate(trunc)), (Ok(b), Ok(a2)) if *b == a2);
    report.record("restriction recovers the pointing", ok, || {
        Witness::new("j^* of the extension", Vec::new())
    });
    report
}

/// Invertible abacus maps, `g = d_⊥ t_⊐` inverse to `f`, and `t_⊤ s_⊐ = t_⊐ s_⊐`
/// on the extension of `p^* X`.
pub fn pointing_consequences(x: &SSet) -> CheckReport {
    let mut report = CheckReport::new("pointing consequences");
    let a = match p_star_tot(x) {
        Ok(a) => a,
        Err(e) => return CheckReport::precondition("pointing consequences", e.to_string()),
    };
    let (e, top) = match (extend_sigma_to_d(&a), top_sections(&a)) {
        (Ok(e), Ok(t)) => (e, t),
        (Err(err), _) | (_, Err(err)) => return from_error("pointing consequences", err),
    };
    report.absorb(has_invertible_abacus(&e));
    report.absorb(dual_abacus_inverse(&e, &top));
    let mut with = ts_compat(&e, Some(&top));
    with.name = "ts with top sections".into();
    report.absorb(with);
    let mut without = ts_compat(&e, None);
    without.name = "ts with inverse abacus".into();
    report.absorb(without);
    report
}

fn half_cases(corpus: &Corpus) -> Vec<Case> {
    corpus
        .maps
        .iter()
        .filter(|(_, f)| map_conditions(f).passed())
        .map(|(n, f)| {
            let f = f.clone();
            Case::new(n.clone(), move || half_round_trip(&f))
        })
        .collect()
}

/// Half extension of `j^* q_*(F)` compared with the rows `i >= 0` of `q_*(F)`.
pub fn half_round_trip(f: &SMap) -> CheckReport {
    let mut report = CheckReport::new("half round trip");
    let b = match q_lower_star(f) {
        Ok(b) => b,
        Err(e) => return from_error("half round trip", e),
    };
    let a = match j_upper_star(&b) {
        Ok(a) => a,
        Err(e) => return from_error("half round trip", e),
    };
    report.absorb(half_axioms(&a));
    report.note(format!(
        "vertical pointing: {}",
        vertical_pointing(&a).passed()
    ));
    let e = match extend_half(&a) {
        Ok(e) => e,
        Err(err) => {
            report.absorb(from_error("half extension", err));
            return report;
        }
    };
    match crate::config::upper_rows_part(&b).and_then(|h| half_comparison(&e, &h)) {
        Ok(m) => {
            report.absorb(m.validate());
            report.absorb(m.iso_report("comparison"));
        }
        Err(err) => report.absorb(from_error("comparison", err)),
    }
    let back = j_upper_star(&e);
    let ok = matches!((&back, a.truncate(e.shape.trunc - 1)), (Ok(x), Ok(y)) if *x == y);
    report.record("restriction recovers the pointing", ok, || {
        Witness::new("j^* of the extension", Vec::new())
    });
    report
}

fn implication(
    report: &mut CheckReport,
    family: &str,
    hypothesis: bool,
    conclusion: impl FnOnce() -> CheckReport,
) {
    if !hypothesis {
        report.family(family);
        return;
    }
    let c = conclusion();
    let witness = c.witnesses.first().cloned();
    report.record(family, c.passed(), || {
        witness.unwrap_or_else(|| Witness::new(c.name.clone(), Vec::new()))
    });
}

fn agreement(report: &mut CheckReport, family: &str, l: bool, r: bool, what: &str) {
    report.record(family, l == r, || {
        Witness::new(format!("{what}: {l} vs {r}"), Vec::new())
    });
}

/// The cheat-sheet facts, each on every corpus space or map where it applies.
fn cheatsheet_cases(corpus: &Corpus) -> Vec<Case> {
    let mut out = Vec::new();
    let mut maps = corpus.maps.clone();
    for (n, x) in &corpus.spaces {
        if x.shape.trunc >= 2 {
            maps.push((format!("top counit {n}"), counit(x, Side::Upper)));
            maps.push((format!("bottom counit {n}"), counit(x, Side::Lower)));
        }
        maps.push((format!("id {n}"), identity_map(x)));
        let x = x.clone();
        out.push(Case::new(format!("space {n}"), move || {
            cheatsheet_space(&x)
        }));
    }
    for (n, f) in maps {
        out.push(Case::new(format!("map {n}"), move || cheatsheet_map(&f)));
    }
    out
}

fn upper_square(y: &SSet) -> CheckReport {
    let mut r = CheckReport::new("upper square");
    let sq = Square {
        top: y.face_table(3, 2),
        left: y.face_table(3, 0),
        right: y.face_table(2, 0),
        bottom: y.face_table(2, 1),
    };
    let names = SquareNames {
        a: y.level(&3),
        b: y.level(&2),
        c: y.level(&2),
    };
    record_square(
        &mut r,
        "d0 against d2 out of Y_3",
        || "upper square".into(),
        sq,
        names,
    );
    r
}

fn lower_square(y: &SSet) -> CheckReport {
    let mut r = CheckReport::new("lower square");
    let sq = Square {
        top: y.face_table(3, 1),
        left: y.face_table(3, 3),
        right: y.face_table(2, 2),
        bottom: y.face_table(2, 1),
    };
    let names = SquareNames {
        a: y.level(&3),
        b: y.level(&2),
        c: y.level(&2),
    };
    record_square(
        &mut r,
        "d3 against d1 out of Y_3",
        || "lower square".into(),
        sq,
        names,
    );
    r
}

fn cheatsheet_space(x: &SSet) -> CheckReport {
    let mut report = CheckReport::new("space");
    if x.shape.trunc < 3 {
        return CheckReport::precondition("space", "truncation below 3");
    }
    let segal = is_segal(x).passed();
    let right = is_right_fibration(&counit(x, Side::Upper)).passed();
    let left = is_left_fibration(&counit(x, Side::Lower)).passed();
    agreement(
        &mut report,
        "segal iff top counit right fibration",
        segal,
        right,
        "segal, right fibration",
    );
    agreement(
        &mut report,
        "segal iff bottom counit left fibration",
        segal,
        left,
        "segal, left fibration",
    );
    let upper = is_2segal(x, Side::Upper).passed();
    let lower = is_2segal(x, Side::Lower).passed();
    implication(&mut report, "upper 2-segal square", upper, || {
        upper_square(x)
    });
    implication(&mut report, "lower 2-segal square", lower, || {
        lower_square(x)
    });
    implication(
        &mut report,
        "upper 2-segal makes the bottom counit culf",
        upper,
        || is_culf(&counit(x, Side::Lower)),
    );
    implication(
        &mut report,
        "lower 2-segal makes the top counit culf",
        lower,
        || is_culf(&counit(x, Side::Upper)),
    );
    report
}

fn is_surjective(f: &SMap) -> bool {
    f.source.shape.objects().into_iter().all(|n| {
        let mut hit = alloc::vec![false; f.target.size(&n)];
        f.components[&n].iter().for_each(|&y| hit[y] = true);
        hit.into_iter().all(|b| b)
    })
}

fn cheatsheet_map(f: &SMap) -> CheckReport {
    let mut report = CheckReport::new("map");
    if f.source.shape.trunc < 3 {
        return CheckReport::precondition("map", "truncation below 3");
    }
    let culf = is_culf(f).passed();
    let lfib = is_left_fibration(f).passed();
    let rfib = is_right_fibration(f).passed();
    implication(
        &mut report,
        "culf makes the top decalage a left fibration",
        culf,
        || is_left_fibration(&dec_map(f, Side::Upper)),
    );
    implication(
        &mut report,
        "culf makes the bottom decalage a right fibration",
        culf,
        || is_right_fibration(&dec_map(f, Side::Lower)),
    );
    implication(
        &mut report,
        "left fibration makes the bottom decalage cartesian",
        lfib,
        || cartesian_on(&dec_map(f, Side::Lower), FaceClass::All),
    );
    implication(
        &mut report,
        "right fibration makes the top decalage cartesian",
        rfib,
        || cartesian_on(&dec_map(f, Side::Upper), FaceClass::All),
    );
    let base_segal = is_segal(&f.target).passed();
    implication(
        &mut report,
        "fibration over a segal base",
        (lfib || rfib) && base_segal,
        || is_segal(&f.source),
    );
    let surjective = is_surjective(f);
    for side in [Side::Lower, Side::Upper] {
        let (xs, ys) = (
            is_2segal(&f.target, side).passed(),
            is_2segal(&f.source, side).passed(),
        );
        let family = format!("culf over {side:?} 2-segal");
        implication(&mut report, &family, culf && xs, || {
            is_2segal(&f.source, side)
        });
        let family = format!("culf surjection reflects {side:?} 2-segal");
        implication(&mut report, &family, culf && surjective && ys, || {
            is_2segal(&f.target, side)
        });
    }
    report
}

fn edgewise_cases(corpus: &Corpus) -> Vec<Case> {
    let mut out: Vec<Case> = corpus
        .spaces
        .iter()
        .map(|(n, x)| {
            let x = x.clone();
            Case::new(format!("space {n}"), move || {
                let s = sd(&x);
                if s.shape.trunc < 2 {
                    return CheckReport::precondition(
                        "edgewise",
                        "the subdivision has no Segal squares below truncation 5",
                    );
                }
                let mut r = CheckReport::new("edgewise");
                let l = is_2segal(&x, Side::Both).passed();
                let rt = is_segal(&s).passed();
                agreement(
                    &mut r,
                    "2-segal iff subdivision segal",
                    l,
                    rt,
                    "2-segal, segal subdivision",
                );
                r
            })
        })
        .collect();
    out.extend(corpus.maps.iter().map(|(n, f)| {
        let f = f.clone();
        Case::new(format!("map {n}"), move || {
            let mut r = CheckReport::new("edgewise");
            let l = is_culf(&f).passed();
            let rt = is_right_fibration(&sd_map(&f)).passed();
            agreement(
                &mut r,
                "culf iff subdivision right fibration",
                l,
                rt,
                "culf, right fibration",
            );
            r
        })
    }));
    out
}
