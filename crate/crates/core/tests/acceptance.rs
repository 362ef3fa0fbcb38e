//! Acceptance run: one line per criterion, exit status 1 if any is red.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use segal_abacus::abacus::{
    hom_enumerate, presentation_completeness, relation_suite_degree, Abacus, DObj,
};
use segal_abacus::config::{
    boors_axioms, build_m, build_m_of_map, condition_star, extract_from_m, half_axioms,
    has_invertible_abacus, horizontal_pointing, is_bicomodule_config, is_rel_upper_2segal,
    j_upper_star, m_comparison, p_star_tot, q_lower_star, star_biconditional, ts_compat, unit_iso,
    vertical_pointing,
};
use segal_abacus::decalage::{
    cofree, is_local_initial, is_local_terminal, is_rigid, pointed, validate_coalgebra, Side,
};
use segal_abacus::fibration::{
    is_2segal, is_culf, is_double_2segal, is_double_segal, is_left_fibration, is_right_fibration,
    is_segal, stability, tot,
};
use segal_abacus::fixtures::{chain_nerve, identity_map, map_corpus, non_2segal};
use segal_abacus::index::IndexCategory;
use segal_abacus::presheaf::{NatMap, Presheaf, SMap};
use segal_abacus::suites::{self, Corpus, Suite};
use segal_abacus::{config, CheckReport, Verdict};

const T: usize = 5;

struct Line {
    ok: bool,
    detail: String,
    elapsed: Duration,
    bound: Option<Duration>,
}

fn timed(bound: Option<u64>, f: impl FnOnce() -> (bool, String)) -> Line {
    let start = Instant::now();
    let (ok, detail) = f();
    let elapsed = start.elapsed();
    let bound = bound.map(Duration::from_secs);
    let ok = ok && bound.is_none_or(|b| elapsed < b);
    Line {
        ok,
        detail,
        elapsed,
        bound,
    }
}

/// All functions `src -> tgt` on beads, kept when monotone with black beads
/// landing on black beads.
fn brute_hom(src: DObj, tgt: DObj) -> usize {
    let (m, n) = (src.size(), tgt.size());
    let mut count = 0;
    for code in 0..n.pow(m as u32) {
        let vals: Vec<usize> = (0..m).map(|k| code / n.pow(k as u32) % n).collect();
        let monotone = vals.windows(2).all(|w| w[0] <= w[1]);
        let colors = (0..src.blacks()).all(|k| vals[k] < tgt.blacks());
        if monotone && colors {
            count += 1;
        }
    }
    count
}

fn is_permutation(table: &[usize], size: usize) -> bool {
    let mut v = table.to_vec();
    v.sort_unstable();
    v == (0..size).collect::<Vec<_>>()
}

fn bijective(f: &SMap) -> bool {
    f.components
        .iter()
        .all(|(n, c)| is_permutation(c, f.target.size(n)))
}

fn conjunction(f: &SMap) -> bool {
    is_2segal(&f.source, Side::Both).passed()
        && is_2segal(&f.target, Side::Both).passed()
        && is_rel_upper_2segal(f).passed()
}

fn presentation() -> Line {
    timed(Some(5), || {
        let relations = relation_suite_degree(4);
        let words = presentation_completeness(4);
        let objects = Abacus::full(4).objects();
        let mut mismatches = 0;
        for &s in &objects {
            for &t in &objects {
                if brute_hom(s, t) != hom_enumerate(s, t).len() {
                    mismatches += 1;
                }
            }
        }
        let o = |i, j| DObj { i, j };
        let spot = (brute_hom(o(0, 0), o(0, 0)), brute_hom(o(0, 0), o(0, -1)));
        let ok = relations.passed()
            && words.passed()
            && mismatches == 0
            && spot == (2, 1)
            && hom_enumerate(o(0, 0), o(0, 0)).len() == 2
            && hom_enumerate(o(0, 0), o(0, -1)).len() == 1;
        (
            ok,
            format!(
                "{} relations, {} hom/word checks, {} hom sets against brute force, spots {:?}",
                relations.checked(),
                words.checked(),
                objects.len() * objects.len(),
                spot
            ),
        )
    })
}

fn cheatsheet(corpus: &Corpus) -> Line {
    timed(Some(30), || {
        let r = suites::run(Suite::Cheatsheet, corpus, T);
        let mut facts: BTreeMap<String, usize> = BTreeMap::new();
        for c in &r.coverage {
            let fact = c
                .family
                .split_once('/')
                .map_or(c.family.as_str(), |(_, f)| f);
            *facts.entry(fact.to_string()).or_default() += c.checked;
        }
        let empty: Vec<_> = facts
            .iter()
            .filter(|(_, &n)| n == 0)
            .map(|(f, _)| f.clone())
            .collect();
        let nerves = corpus
            .spaces
            .iter()
            .filter(|(n, _)| !n.starts_with("sk"))
            .count();
        let has_pm = corpus.spaces.iter().any(|(n, _)| n == "partial-monoid");
        let ok = r.passed() && empty.is_empty() && nerves >= 21 && has_pm && facts.len() >= 15;
        (
            ok,
            format!(
                "{nerves} nerves, {} facts, min instances {}, {} failures, vacuous {:?}",
                facts.len(),
                facts.values().min().copied().unwrap_or(0),
                r.failures(),
                empty
            ),
        )
    })
}

fn star(maps: &[(String, SMap)]) -> Line {
    timed(None, || {
        let (mut pos, mut neg, mut disagree) = (0, 0, 0);
        for (_, f) in maps {
            let b = q_lower_star(f).expect("q_* of a corpus map");
            let (s, u) = (condition_star(&b).passed(), unit_iso(&b).passed());
            disagree += usize::from(s != u);
            pos += usize::from(s);
        }
        for (i, j) in [(0, 0), (1, 0), (0, 1)] {
            let b = config::collapsed_representable(DObj { i, j }, T).expect("fixture");
            let valid = b.validate().passed();
            let (s, u) = (condition_star(&b).passed(), unit_iso(&b).passed());
            disagree += usize::from(s != u);
            neg += usize::from(valid && !s && star_biconditional(&b).passed());
        }
        (
            pos >= 10 && neg >= 1 && disagree == 0,
            format!("{pos} positives, {neg} validated negatives, {disagree} disagreements"),
        )
    })
}

fn dictionary(maps: &[(String, SMap)]) -> Line {
    timed(None, || {
        let (mut agree, mut bad_target) = (0, 0);
        for (_, f) in maps {
            let b = q_lower_star(f).expect("q_* of a corpus map");
            agree += usize::from(is_bicomodule_config(&b).passed() == conjunction(f));
            bad_target += usize::from(!is_2segal(&f.target, Side::Both).passed());
        }
        (
            maps.len() >= 10 && agree == maps.len() && bad_target >= 2,
            format!(
                "{agree}/{} agree, {bad_target} with non-2-Segal target",
                maps.len()
            ),
        )
    })
}

fn invertibility(maps: &[(String, SMap)]) -> Line {
    timed(None, || {
        let (mut agree, mut yes) = (0, 0);
        for (_, f) in maps {
            let b = q_lower_star(f).expect("q_* of a corpus map");
            let inv = has_invertible_abacus(&b).passed();
            agree += usize::from(inv == bijective(f));
            yes += usize::from(inv);
        }
        (
            agree == maps.len() && yes > 0 && yes < maps.len(),
            format!("{agree}/{} agree, {yes} invertible", maps.len()),
        )
    })
}

fn total_space(maps: &[(String, SMap)]) -> Line {
    timed(None, || {
        let (mut agree, mut neg, mut recovered, mut sizes) = (0, 0, 0, 0);
        for (_, f) in maps {
            let (m, _) = build_m_of_map(f).expect("M of a corpus map");
            let two = is_2segal(&m, Side::Both).passed();
            let c = conjunction(f);
            agree += usize::from(two == c);
            neg += usize::from(!c);
            let b = q_lower_star(f).expect("q_*");
            let (_, p) = build_m(&b).expect("M");
            let back = extract_from_m(&p).expect("extraction");
            let iso = m_comparison(&b).expect("comparison");
            recovered += usize::from(
                iso.validate().passed()
                    && iso.iso_report("iso").passed()
                    && back.validate().passed(),
            );
            let expect = |n: usize| {
                (0..=n + 1)
                    .map(|k| {
                        b.size(&DObj {
                            i: k as i64 - 1,
                            j: n as i64 - k as i64,
                        })
                    })
                    .sum::<usize>()
            };
            sizes += usize::from((0..=m.shape.trunc).all(|n| m.size(&n) == expect(n)));
        }
        let n = maps.len();
        (
            n >= 10 && agree == n && neg >= 1 && recovered == n && sizes == n,
            format!("{agree}/{n} agree, {neg} negatives, {recovered} extractions iso, {sizes} level sizes"),
        )
    })
}

fn two_segal(corpus: &Corpus) -> Vec<(String, Presheaf<segal_abacus::index::Simplex>)> {
    corpus
        .spaces
        .iter()
        .filter(|(_, x)| is_2segal(x, Side::Both).passed())
        .cloned()
        .collect()
}

fn boors(corpus: &Corpus) -> Line {
    timed(Some(60), || {
        let spaces = two_segal(corpus);
        let mut ok = 0;
        let mut depth = usize::MAX;
        for (_, x) in &spaces {
            let r = suites::boors_round_trip(x);
            let a = p_star_tot(x).expect("p^* tot");
            let e = config::extend_sigma_to_d(&a).expect("extension");
            depth = depth.min(e.shape.trunc);
            let back = j_upper_star(&e).expect("j^*")
                == a.truncate(e.shape.trunc - 1).expect("truncation");
            ok += usize::from(r.passed() && boors_axioms(&a).passed() && back);
        }
        let pm = spaces.iter().any(|(n, _)| n == "partial-monoid");
        (
            ok == spaces.len() && pm && spaces.len() >= 20,
            format!(
                "{ok}/{} round trips, partial monoid included: {pm}, verified depth {depth}",
                spaces.len()
            ),
        )
    })
}

fn pointing(corpus: &Corpus) -> Line {
    timed(None, || {
        let spaces = two_segal(corpus);
        let ok = spaces
            .iter()
            .filter(|(_, x)| suites::pointing_consequences(x).passed())
            .count();
        (
            ok == spaces.len(),
            format!("{ok}/{} fixtures", spaces.len()),
        )
    })
}

fn half(maps: &[(String, SMap)]) -> Line {
    timed(None, || {
        let (mut n, mut ok, mut no_vertical) = (0, 0, 0);
        for (_, f) in maps.iter().filter(|(_, f)| conjunction(f)) {
            n += 1;
            let a = j_upper_star(&q_lower_star(f).expect("q_*")).expect("j^*");
            ok += usize::from(suites::half_round_trip(f).passed() && half_axioms(&a).passed());
            no_vertical +=
                usize::from(!vertical_pointing(&a).passed() && horizontal_pointing(&a).passed());
        }
        (
            n >= 5 && ok == n && no_vertical >= 1,
            format!("{ok}/{n} round trips, {no_vertical} without vertical pointing"),
        )
    })
}

/// Entries corrupted per table: the first, a middle and the last one.
fn sample(len: usize) -> Vec<usize> {
    let mut v = vec![0, len / 2, len.saturating_sub(1)];
    v.dedup();
    v.retain(|&x| x < len);
    v
}

/// Whether some single-entry corruption turns a passing check into a failure
/// with a witness. Corruptions that keep the relations intact are tried
/// first; the flag reports which kind was found.
fn first_flip<T>(
    passing: bool,
    mutants: Vec<T>,
    valid: impl Fn(&T) -> bool,
    check: impl Fn(&T) -> CheckReport,
) -> Option<bool> {
    if !passing {
        return None;
    }
    let (good, bad): (Vec<T>, Vec<T>) = mutants.into_iter().partition(|m| valid(m));
    if good.iter().any(|m| flips(&check(m))) {
        return Some(true);
    }
    bad.iter().any(|m| flips(&check(m))).then_some(false)
}

fn mutate_presheaf<C: IndexCategory>(
    p: &Presheaf<C>,
    check: &dyn Fn(&Presheaf<C>) -> CheckReport,
) -> Option<bool> {
    let mut mutants = Vec::new();
    for (g, table) in &p.actions {
        let size = p.size(&p.shape.source(g));
        if size < 2 {
            continue;
        }
        for x in sample(table.len()) {
            let mut q = p.clone();
            let t = q.actions.get_mut(g).unwrap();
            t[x] = (t[x] + 1) % size;
            mutants.push(q);
        }
    }
    first_flip(check(p).passed(), mutants, |q| q.validate().passed(), check)
}

fn mutate_map(f: &SMap, check: &dyn Fn(&SMap) -> CheckReport) -> Option<bool> {
    let mut mutants = Vec::new();
    for (n, comp) in &f.components {
        let size = f.target.size(n);
        if size < 2 {
            continue;
        }
        for x in sample(comp.len()) {
            let mut g: NatMap<_> = f.clone();
            let c = g.components.get_mut(n).unwrap();
            c[x] = (c[x] + 1) % size;
            mutants.push(g);
        }
    }
    for (h, table) in &f.target.actions {
        let size = f.target.size(&f.target.shape.source(h));
        if size < 2 {
            continue;
        }
        for x in sample(table.len()) {
            let mut g: NatMap<_> = f.clone();
            let t = g.target.actions.get_mut(h).unwrap();
            t[x] = (t[x] + 1) % size;
            mutants.push(g);
        }
    }
    let valid = |g: &SMap| g.target.validate().passed() && g.validate().passed();
    first_flip(check(f).passed(), mutants, valid, check)
}

fn flips(r: &CheckReport) -> bool {
    r.verdict == Verdict::Fail && !r.witnesses.is_empty()
}

fn mutations() -> Line {
    timed(Some(60), || {
        let x = chain_nerve(2, 4);
        let b = q_lower_star(&identity_map(&chain_nerve(1, 3))).expect("q_*");
        let a = p_star_tot(&chain_nerve(1, 4)).expect("p^* tot");
        let bi = tot(&x);
        let vertex = |id: &str| x.find(&0, id).expect("vertex");
        let initial = pointed(&x, vec!["b".into()], vec![vertex("0")]).expect("pointed");
        let terminal = pointed(&x, vec!["t".into()], vec![vertex("2")]).expect("pointed");
        let split = cofree(&x, false);
        let id = identity_map(&x);

        let mut results: Vec<(&str, Option<bool>)> = vec![
            ("validate", mutate_presheaf(&x, &|p| p.validate())),
            ("segal", mutate_presheaf(&x, &is_segal)),
            (
                "upper 2-segal",
                mutate_presheaf(&x, &|p| is_2segal(p, Side::Upper)),
            ),
            (
                "lower 2-segal",
                mutate_presheaf(&x, &|p| is_2segal(p, Side::Lower)),
            ),
            (
                "upper stability",
                mutate_presheaf(&bi, &|p| stability(p, Side::Upper)),
            ),
            (
                "lower stability",
                mutate_presheaf(&bi, &|p| stability(p, Side::Lower)),
            ),
            ("double segal", mutate_presheaf(&bi, &is_double_segal)),
            ("double 2-segal", mutate_presheaf(&bi, &is_double_2segal)),
            ("star", mutate_presheaf(&b, &condition_star)),
            ("unit", mutate_presheaf(&b, &unit_iso)),
            ("bicomodule", mutate_presheaf(&b, &is_bicomodule_config)),
            (
                "invertible abacus",
                mutate_presheaf(&b, &has_invertible_abacus),
            ),
            (
                "ts compatibility",
                mutate_presheaf(&b, &|p| ts_compat(p, None)),
            ),
            ("boors", mutate_presheaf(&a, &boors_axioms)),
            ("half", mutate_presheaf(&a, &half_axioms)),
            (
                "horizontal pointing",
                mutate_presheaf(&a, &horizontal_pointing),
            ),
            ("vertical pointing", mutate_presheaf(&a, &vertical_pointing)),
            (
                "local initial",
                mutate_presheaf(&initial, &is_local_initial),
            ),
            (
                "local terminal",
                mutate_presheaf(&terminal, &is_local_terminal),
            ),
            ("coalgebra", mutate_presheaf(&split, &validate_coalgebra)),
            ("rigid", mutate_presheaf(&split, &is_rigid)),
        ];
        results.push(("culf", mutate_map(&id, &is_culf)));
        results.push(("left fibration", mutate_map(&id, &is_left_fibration)));
        results.push(("right fibration", mutate_map(&id, &is_right_fibration)));
        results.push((
            "relative upper 2-segal",
            mutate_map(&id, &is_rel_upper_2segal),
        ));

        let missed: Vec<&str> = results
            .iter()
            .filter(|(_, r)| r.is_none())
            .map(|(n, _)| *n)
            .collect();
        let valid = results.iter().filter(|(_, r)| *r == Some(true)).count();
        (
            missed.is_empty(),
            format!(
                "{}/{} checkers flipped, {valid} by relation-preserving corruptions, missed {missed:?}",
                results.len() - missed.len(),
                results.len()
            ),
        )
    })
}

fn main() {
    let corpus = Corpus::standard(T);
    let mut maps = map_corpus(T);
    maps.sort_by(|l, r| l.0.cmp(&r.0));
    assert!(non_2segal(T)
        .iter()
        .all(|(n, _)| corpus.spaces.iter().any(|(m, _)| m == n)));

    let criteria: Vec<(&str, Box<dyn Fn() -> Line>)> = vec![
        (
            "presentation of the abacus category",
            Box::new(presentation),
        ),
        ("cheat-sheet facts", Box::new(|| cheatsheet(&corpus))),
        (
            "condition (★) iff unit invertible",
            Box::new(|| star(&maps)),
        ),
        (
            "bicomodule configuration dictionary",
            Box::new(|| dictionary(&maps)),
        ),
        (
            "invertible abacus iff bijective",
            Box::new(|| invertibility(&maps)),
        ),
        ("2-Segal total space", Box::new(|| total_space(&maps))),
        (
            "pointed bisimplicial round trip",
            Box::new(|| boors(&corpus)),
        ),
        ("pointing consequences", Box::new(|| pointing(&corpus))),
        ("half-axiom round trip", Box::new(|| half(&maps))),
        ("mutation detection", Box::new(mutations)),
    ];

    let mut red = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let line = run();
        red += usize::from(!line.ok);
        let bound = line
            .bound
            .map_or(String::new(), |b| format!(" < {}s", b.as_secs()));
        println!(
            "criterion {:>2} {} {name}: {} [{:.2}s{bound}]",
            k + 1,
            if line.ok { "PASS" } else { "FAIL" },
            line.detail,
            line.elapsed.as_secs_f64()
        );
    }
    if red > 0 {
        eprintln!("{red} criteria failed");
        std::process::exit(1);
    }
}
