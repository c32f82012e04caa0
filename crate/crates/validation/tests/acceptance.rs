//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lagrange_spheres::exact::{int, rat, sample::random_element, sample::random_pair, BigRational, KElement};
use lagrange_spheres::geometry::{k_elements_for_sphere, verify_phi_conditions, SpaceCase};
use lagrange_spheres::horospheres::{
    caption_identity_holds, caption_radius, figure_table, horoball_on_sphere, tangency_graph_with_summary,
};
use lagrange_spheres::spectra::{
    cited_constants, estimate_lagrange, generated_family, markoff_tree, satisfies, transfer_identity_check, x_values,
    y_values, ExactSquare, Interval, MarkoffTriple, Space, TargetNumber,
};
use lagrange_spheres_cli::run;

type Outcome = Result<String, String>;

fn seed(case: SpaceCase, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(salt * 1000 + case as u64)
}

fn phi_exactness() -> Outcome {
    let t = Instant::now();
    for case in SpaceCase::ALL {
        let mut rng = seed(case, 1);
        for _ in 0..10_000 {
            let (z, w) = random_pair(case.field(), 1000, &mut rng);
            let r = verify_phi_conditions(case, &z, &w).map_err(|e| format!("{case} {z} {w}: {e}"))?;
            if !(r.phi_i_holds && r.phi_ii_holds) {
                return Err(format!("{case}: z={z} w={w} {:?}", r.witnesses));
            }
        }
    }
    Ok(format!("6 x 10^4 pairs exact in {:.1?}", t.elapsed()))
}

fn point_table() -> Outcome {
    let mut counts = Vec::new();
    for case in SpaceCase::ALL {
        let slug = case.slug();
        for &(zs, ps) in figure_table(case) {
            let z = KElement::parse(case.field(), zs).map_err(|e| e.to_string())?;
            let q = ps.rsplit('/').next().unwrap();
            let (code, out, err) = run(&["lagrange-spheres", "map", "--case", &slug, zs]);
            if code != 0 || out != format!("{ps} height={q}\n") {
                return Err(format!("map {case} {zs}: got '{}' {err}", out.trim()));
            }
            let (code, out, err) = run(&["lagrange-spheres", "unmap", "--case", &slug, ps]);
            let got = out.split_whitespace().next().unwrap_or("");
            if code != 0 || got != z.to_string() {
                return Err(format!("unmap {case} {ps}: got '{}' {err}", out.trim()));
            }
        }
        counts.push(figure_table(case).len());
    }
    let named = [
        ("s1-i", "3/sqrt2", "(4,3)/5 height=5\n"),
        ("s1-iii", "1/2", "(2,2,-1)/3 height=3\n"),
        ("s2-i", "1+i", "(0,1,0)/1 height=1\n"),
        ("s2-iii", "w", "(1,-1,1,1)/2 height=2\n"),
    ];
    for (c, z, want) in named {
        let (_, out, _) = run(&["lagrange-spheres", "map", "--case", c, z]);
        if out != want {
            return Err(format!("map {c} {z} = {out}"));
        }
    }
    if counts != [12, 12, 10, 6, 12, 8] {
        return Err(format!("table sizes {counts:?}"));
    }
    Ok("60 correspondences reproduced by map and inverted by unmap".into())
}

fn markoff_family() -> Outcome {
    let t = Instant::now();
    let bound = 500u64;
    let mut oracle = BTreeSet::new();
    let mut checks = 0u64;
    for x in 1..=bound {
        for y1 in 1..=bound {
            for y2 in y1..=bound {
                checks += 1;
                if satisfies([x, y1, y2]) {
                    oracle.insert(MarkoffTriple { x, y1, y2 });
                    oracle.insert(MarkoffTriple { x, y1: y2, y2: y1 });
                }
            }
        }
    }
    let tree: BTreeSet<MarkoffTriple> = markoff_tree(bound).into_iter().collect();
    let mut problems = Vec::new();
    if tree != oracle {
        problems.push(format!("tree has {} solutions, oracle {}", tree.len(), oracle.len()));
    }
    let xs = x_values(30);
    if xs != [1, 5, 11, 29] {
        problems.push(format!("x-values <= 30 are {xs:?}, expected [1, 5, 11, 29]"));
    }
    let ys = y_values(20);
    if ys != [1, 3, 11, 17] {
        problems.push(format!("y-values <= 20 are {ys:?}"));
    }
    let summary = format!("oracle {} solutions from {checks} checks in {:.1?}", oracle.len(), t.elapsed());
    if problems.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{}; {summary}", problems.join("; ")))
    }
}

fn s1_spectrum() -> Outcome {
    let four = ExactSquare::Rational(int(4));
    let v = generated_family(SpaceCase::S1I, 30).map_err(|e| e.to_string())?;
    let first: Vec<ExactSquare> = v.iter().take(3).map(|x| x.square.clone()).collect();
    let want = [int(2), int(3), rat(34, 9)].map(ExactSquare::Rational);
    if first != want {
        return Err(format!("first squares {first:?}"));
    }
    let mut last: Option<BigRational> = None;
    let mut tops = Vec::new();
    for b in [30, 100, 1000, 10_000] {
        let v = generated_family(SpaceCase::S1I, b).map_err(|e| e.to_string())?;
        for w in v.windows(2) {
            if w[0].square.cmp_exact(&w[1].square).is_ge() {
                return Err(format!("not ascending at bound {b}"));
            }
        }
        let mut top = None;
        for x in &v {
            match &x.square {
                ExactSquare::Rational(r) if x.square.cmp_exact(&four).is_lt() => top = Some(r.clone()),
                s => return Err(format!("value square {s} is not a rational below 4")),
            }
        }
        let top = top.unwrap();
        if let Some(l) = &last {
            if &top < l {
                return Err(format!("largest square decreased at bound {b}"));
            }
        }
        tops.push(format!("{b}: 4-{}", int(4) - &top));
        last = Some(top);
    }
    let gap = int(4) - last.unwrap();
    if gap > rat(1, 1_000_000) {
        return Err(format!("largest square at 10^4 still {gap} below 4"));
    }
    Ok(format!("sqrt2, sqrt3, sqrt34/3, ...; largest square {}", tops.join(", ")))
}

fn horoball_certification() -> Outcome {
    let t = Instant::now();
    let mut parts = Vec::new();
    for case in SpaceCase::ALL {
        let (g, s) = tangency_graph_with_summary(case, 25).map_err(|e| format!("{case}: {e}"))?;
        let n = g.nodes.len() as u64;
        if s.pairs != n * (n - 1) / 2 || s.tangent + s.disjoint != s.pairs || s.tangent != g.edges.len() as u64 {
            return Err(format!("{case}: inconsistent summary {s:?}"));
        }
        parts.push(format!("{} {}/{}", case.name(), s.tangent, s.pairs));
    }
    Ok(format!("tangent/pairs {} in {:.1?}, no overlaps", parts.join(", "), t.elapsed()))
}

fn radius_identities() -> Outcome {
    let mut checked = 0;
    for case in SpaceCase::ALL {
        if !caption_identity_holds(case) {
            return Err(format!("{case}: caption formula differs from R/(1+sH)"));
        }
        let mut rng = seed(case, 6);
        let mut zs: Vec<KElement> = (0..300).map(|_| random_element(case.field(), 1000, &mut rng)).collect();
        zs.extend(k_elements_for_sphere(case, 40).into_iter().map(|(z, _)| z));
        for z in zs {
            let b = horoball_on_sphere(&z, case).map_err(|e| format!("{case} {z}: {e}"))?;
            let h = BigRational::from_integer(b.base.q().clone());
            if b.radius != caption_radius(case, &h) {
                return Err(format!("{case}: caption radius at {}", b.base));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} balls match the composition and the captions; 6 caption identities"))
}

/// [lo − w/2, hi + w/2].
fn band(x: &Interval, w: &BigRational) -> Interval {
    x.widen(&(w / int(2)))
}

/// √n ∈ [a, b] for 0 < a.
fn contains_sqrt(x: &Interval, n: &BigRational) -> bool {
    x.lo() > &int(0) && &(x.lo() * x.lo()) <= n && n <= &(x.hi() * x.hi())
}

fn lagrange_scaling() -> Outcome {
    let t = Instant::now();
    let g = TargetNumber::golden();
    let q = estimate_lagrange(&g, Space::Boundary(lagrange_spheres::exact::BoundaryField::Rationals), 10_000)
        .map_err(|e| e.to_string())?;
    let s = estimate_lagrange(&g, Space::Sphere(SpaceCase::S1III), 10_000).map_err(|e| e.to_string())?;
    let bq = band(&q, &rat(1, 1000));
    let bs = band(&s, &rat(2, 1000));
    let ratio = bq.div(&bs).map_err(|e| e.to_string())?;
    let ok = [contains_sqrt(&bq, &int(5)), contains_sqrt(&bs, &rat(5, 2)), contains_sqrt(&ratio, &int(2))];
    let msg = format!("Q {} S1_III {} ratio {} in {:.1?}", q, s, ratio, t.elapsed());
    if ok.iter().all(|&b| b) {
        Ok(msg)
    } else {
        Err(format!("{ok:?}: {msg}"))
    }
}

fn transfer_identity() -> Outcome {
    for case in SpaceCase::ALL {
        let mut rng = seed(case, 8);
        for _ in 0..1000 {
            let (z, w) = random_pair(case.field(), 1000, &mut rng);
            transfer_identity_check(case, &z, &w).map_err(|e| e.to_string())?;
        }
    }
    Ok("6 x 1000 seeded pairs exact".into())
}

fn cited() -> Outcome {
    let want = [
        (SpaceCase::S2III, "(13/4)^(1/4)", "1.34267480714132513530494723875"),
        (SpaceCase::S2III, "((14 + 8 sqrt(3))/13)^(1/2)", "1.46383076103949357806311468808"),
        (SpaceCase::S2II, "1", "1.00000000000000000000000000000"),
        (SpaceCase::S2I, "sqrt((3/10)sqrt(41))", "1.38597881341305308062304862050"),
    ];
    let mut shown = Vec::new();
    for (case, printed, digits) in want {
        let c = cited_constants(case)
            .into_iter()
            .find(|c| c.printed == printed)
            .ok_or_else(|| format!("{case}: {printed} missing"))?;
        c.verify().map_err(|e| e.to_string())?;
        let d = c.decimal(30);
        if d != digits {
            return Err(format!("{printed} printed as {d}"));
        }
        shown.push(format!("{printed} = {d}"));
    }
    Ok(shown.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("phi-i/phi-ii exactness", phi_exactness),
        ("figure point table", point_table),
        ("Markoff family", markoff_family),
        ("S1_I discrete spectrum", s1_spectrum),
        ("horoball certification", horoball_certification),
        ("radius identities", radius_identities),
        ("Lagrange scaling", lagrange_scaling),
        ("transfer identity", transfer_identity),
        ("cited constants", cited),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(m) => println!("PASS {} {name}: {m}", i + 1),
            Err(m) => {
                failed += 1;
                println!("FAIL {} {name}: {m}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
