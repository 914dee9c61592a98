//! The property registry: one entry per stated law, grouped by module.

use std::sync::OnceLock;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    adjunction_suite, base_change, base_pushforward, binary_product, cartesian_closure, check_universal_property,
    compose, compose_lens, compose_position_count, cone_test_objects, curry_cartesian, curry_dirichlet,
    dirichlet_closure, distribute_left, duoidal, epi_test_objects, equalizer_diagram, factor_epi_mono,
    factor_vert_cart, hom_count, hom_iter, is_epi_by_cancellation, is_mono_by_cancellation, limit,
    mono_test_objects, product, product_diagram, product_projection, pullback_diagram, tensor, tensor_lens,
    transpose_left, transpose_right, uncurry_cartesian, uncurry_dirichlet, untranspose_left, untranspose_right,
    vertical_hom_count, vertical_homs, Monoidal, Pushforward,
};
use crate::category::{
    category_to_comonoid, check_category, check_cofunctor, comonoid_sum, comonoid_tensor, comonoid_to_category,
    contractible, find_isomorphism, is_comonoid_morphism, nstep_behavior, small_catalog, Cofunctor, Comonoid,
    FinCat,
};
use crate::dynamics::{juxtapose_all, lens_to_moore, moore_to_lens, overlay, run_moore, Mdds, MooreMachine};
use crate::error::PolyError;
use crate::lens::Lens;
use crate::poly::FinPoly;
use crate::set::{FinSet, SetFn};

use super::gen::{exps, instance, named, random_lens, random_machine, random_table, sized, Instance};
use super::{Outcome, Suite};

const CAP: usize = 1 << 16;
/// Largest `C ∘ C ∘ C` built for the lens form of the comonoid laws.
const MATERIALIZE_CAP: usize = 1 << 12;
/// Largest composite built while checking associativity of `∘`.
const COMPOSE_LIMIT: usize = 4096;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn lib<T>(r: crate::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("library error: {e}"))
}

fn small(b: usize) -> usize {
    b.min(2)
}

fn catalog() -> &'static [FinCat] {
    static CATALOG: OnceLock<Vec<FinCat>> = OnceLock::new();
    CATALOG.get_or_init(small_catalog)
}

fn pick_category(rng: &mut ChaCha8Rng) -> &'static FinCat {
    let cats = catalog();
    &cats[rng.gen_range(0..cats.len())]
}

macro_rules! suite {
    ($name:literal, $module:literal, $property:literal, $gen:ident, $check:ident) => {
        Suite {
            name: $name,
            module: $module,
            property: $property,
            generate: $gen,
            check: $check,
        }
    };
}

pub static SUITES: &[Suite] = &[
    suite!("core.eval_cardinality", "core", "|p(X)| = Σ_i |X|^|p_i|", gen_eval, check_eval),
    suite!("core.lens_category", "core", "lens composition is unital and associative", gen_four, check_lens_category),
    suite!("core.canonical_iso", "core", "equal canonical forms iff an invertible lens exists", gen_iso, check_canonical_iso),
    suite!("core.epi_cancellation", "core", "is_epi agrees with right cancellation", gen_pair_small, check_epi),
    suite!("algebra.monoidal_coherence", "algebra", "unitors, associators and symmetries are isomorphisms", gen_triple, check_monoidal),
    suite!("algebra.hom_count", "algebra", "hom_count equals the number of enumerated lenses", gen_pair_small, check_hom_count),
    suite!("algebra.compose_functor", "algebra", "(p ∘ q)(X) ≅ p(q(X))", gen_compose_eval, check_compose_eval),
    suite!("algebra.product_tensor_dirs", "algebra", "× adds and ⊗ multiplies direction counts", gen_pair, check_product_tensor),
    suite!("algebra.limit_universal", "algebra", "limits have unique mediating lenses", gen_triple_small, check_limits),
    suite!("algebra.factorization", "algebra", "vertical/cartesian and epi/mono factorizations", gen_pair_small, check_factorization),
    suite!("algebra.closures", "algebra", "currying is a bijection for both closures", gen_triple_small, check_closures),
    suite!("algebra.adjunctions", "algebra", "the adjunctions with Set hold by explicit bijection", gen_adjunction, check_adjunctions),
    suite!("algebra.base_change", "algebra", "f_! ⊣ f^* ⊣ f_* on vertical lenses", gen_base_change, check_base_change),
    suite!("algebra.distributivity", "algebra", "(pq + r) ∘ s ≅ (p ∘ s)(q ∘ s) + r ∘ s", gen_four_small, check_distributivity),
    suite!("algebra.duoidal", "algebra", "the duoidal map is natural and trivial on units", gen_five_small, check_duoidal),
    suite!("comonoid.conversions", "comonoid", "categories and comonoids convert back and forth", gen_salt, check_conversions),
    suite!("comonoid.morphisms", "comonoid", "comonoid morphisms are exactly cofunctors", gen_salt, check_morphisms),
    suite!("comonoid.structure", "comonoid", "sums and tensors of comonoids are comonoids", gen_salt, check_structure),
    suite!("comonoid.bisimulation", "comonoid", "n-bisimilarity refines and stabilizes", gen_machine, check_bisimulation),
    suite!("dynamics.moore_lens", "dynamics", "Moore machines are lenses S y^S -> B y^A", gen_machine, check_moore_lens),
    suite!("dynamics.unroll_behavior", "dynamics", "unrolling equals the n-step behavior", gen_machine_small, check_unroll),
    suite!("dynamics.wiring_coupling", "dynamics", "feedback wiring matches the coupled recurrence", gen_coupling, check_coupling),
    suite!("dynamics.overlay_universal", "dynamics", "overlay is the unique pairing", gen_overlay, check_overlay),
    suite!("dynamics.trace_validity", "dynamics", "traces satisfy the dynamics", gen_trace, check_traces),
];

// ---- generators ----

fn gen_salt(rng: &mut ChaCha8Rng, _b: usize) -> Instance {
    instance(rng, Vec::new())
}

fn gen_eval(rng: &mut ChaCha8Rng, b: usize) -> Instance {
    let polys = vec![exps(rng, b + 1, b), sized(rng, 0, b)];
    instance(rng, polys)
}

fn gen_n(rng: &mut ChaCha8Rng, n: usize, max_pos: usize, max_dir: usize) -> Instance {
    let polys = (0..n).map(|_| exps(rng, max_pos, max_dir)).collect();
    instance(rng, polys)
}

fn gen_pair(rng: &mut ChaCha8Rng, b: usize) -> Instance {
    gen_n(rng, 2, b, b)
}

fn gen_pair_small(rng: &mut ChaCha8Rng, b: usize) -> Instance {
    gen_n(rng, 2, b, small(b))
}

fn gen_triple(rng: &mut ChaCha8Rng, b: usize) -> Instance {
    gen_n(rng, 3, b, b)
}

fn gen_triple_small(rng: &mut ChaCha8Rng, b: usize) -> Instance {
    gen_n(rng, 3, small(b), small(b))
}

fn gen_four(rng: &mut ChaCha8Rng, b: usize) -> Instance {
    gen_n(rng, 4, b, small(b))
}

fn gen_four_small(rng: &mut ChaCha8Rng, b: usize) -> Instance {
    gen_n(rng, 4, small(b), small(b))
}

fn gen_five_small(rng: &mut ChaCha8Rng, b: usize) -> Instance {
    gen_n(rng, 5, small(b), small(b))
}

/// Half the time `q` is a reordering of `p`, so isomorphic pairs occur.
fn gen_iso(rng: &mut ChaCha8Rng, b: usize) -> Instance {
    let p = exps(rng, b, small(b));
    let q = if rng.gen_bool(0.5) {
        let mut q = p.clone();
        q.shuffle(rng);
        q
    } else {
        exps(rng, b, small(b))
    };
    instance(rng, vec![p, q])
}

fn gen_compose_eval(rng: &mut ChaCha8Rng, b: usize) -> Instance {
    let polys = vec![exps(rng, b, small(b)), exps(rng, b, small(b)), sized(rng, 0, 2)];
    instance(rng, polys)
}

fn gen_adjunction(rng: &mut ChaCha8Rng, b: usize) -> Instance {
    let polys = vec![sized(rng, 0, 2), exps(rng, small(b), small(b)), exps(rng, small(b), small(b))];
    instance(rng, polys)
}

/// `p` over `A` and `q` over `B`; the function `A -> B` comes from the salt.
fn gen_base_change(rng: &mut ChaCha8Rng, b: usize) -> Instance {
    let na = rng.gen_range(0..=b);
    let nb = rng.gen_range(1..=small(b).max(1));
    let p = (0..na).map(|_| rng.gen_range(0..=small(b))).collect();
    let q = (0..nb).map(|_| rng.gen_range(0..=small(b))).collect();
    instance(rng, vec![p, q])
}

/// Sizes of states, inputs and outputs.
fn gen_machine(rng: &mut ChaCha8Rng, b: usize) -> Instance {
    let polys = vec![sized(rng, 1, b + 1), sized(rng, 0, small(b)), sized(rng, 1, b)];
    instance(rng, polys)
}

fn gen_machine_small(rng: &mut ChaCha8Rng, b: usize) -> Instance {
    let polys = vec![sized(rng, 1, b.min(3)), sized(rng, 1, small(b)), sized(rng, 1, small(b))];
    instance(rng, polys)
}

/// Sizes of plant states, controller states, external inputs, plant
/// outputs and controller outputs.
fn gen_coupling(rng: &mut ChaCha8Rng, b: usize) -> Instance {
    let polys = (0..5).map(|_| sized(rng, 1, small(b))).collect();
    instance(rng, polys)
}

fn gen_overlay(rng: &mut ChaCha8Rng, b: usize) -> Instance {
    let polys = vec![sized(rng, 1, 2), exps(rng, small(b), small(b)), exps(rng, small(b), small(b))];
    instance(rng, polys)
}

fn gen_trace(rng: &mut ChaCha8Rng, b: usize) -> Instance {
    let polys = vec![
        sized(rng, 1, b + 1),
        sized(rng, 0, small(b)),
        sized(rng, 1, b),
        exps(rng, small(b), small(b)),
    ];
    instance(rng, polys)
}

// ---- poly-core ----

fn check_eval(x: &Instance, _b: usize) -> Outcome {
    let p = x.poly(0);
    let n = x.size(1);
    let got = p.eval(&FinSet::ordinal(n)).len();
    let want: usize = p.exponents().iter().map(|&e| n.pow(e as u32)).sum();
    ensure!(got == want, "|{}({n})| = {got}, expected {want}", p.algebraic());
    Ok(())
}

fn check_lens_category(x: &Instance, _b: usize) -> Outcome {
    let mut rng = x.rng();
    let ps: Vec<FinPoly> = (0..4).map(|k| x.poly(k)).collect();
    let (Some(f), Some(g), Some(h)) = (
        random_lens(&mut rng, &ps[0], &ps[1]),
        random_lens(&mut rng, &ps[1], &ps[2]),
        random_lens(&mut rng, &ps[2], &ps[3]),
    ) else {
        return Ok(());
    };
    ensure!(lib(Lens::identity(ps[0].clone()).then(&f))? == f, "id ; f != f");
    ensure!(lib(f.then(&Lens::identity(ps[1].clone())))? == f, "f ; id != f");
    let left = lib(lib(f.then(&g))?.then(&h))?;
    let right = lib(f.then(&lib(g.then(&h))?))?;
    ensure!(left == right, "(f ; g) ; h != f ; (g ; h)");
    Ok(())
}

fn check_canonical_iso(x: &Instance, _b: usize) -> Outcome {
    let (p, q) = (x.poly(0), x.poly(1));
    let same = p.canonical_form() == q.canonical_form();
    let witness = hom_iter(&p, &q).find(Lens::is_invertible);
    if let Some(f) = &witness {
        let g = lib(f.inverse())?;
        ensure!(lib(f.then(&g))? == Lens::identity(p.clone()), "inverse is not two-sided");
        ensure!(lib(g.then(f))? == Lens::identity(q.clone()), "inverse is not two-sided");
    }
    ensure!(
        same == witness.is_some(),
        "{} vs {}: canonical forms equal = {same}, invertible lens found = {}",
        p.algebraic(),
        q.algebraic(),
        witness.is_some()
    );
    Ok(())
}

fn check_epi(x: &Instance, _b: usize) -> Outcome {
    let mut rng = x.rng();
    let Some(f) = random_lens(&mut rng, &x.poly(0), &x.poly(1)) else {
        return Ok(());
    };
    let by_cancel = lib(is_epi_by_cancellation(&f, &epi_test_objects()))?;
    ensure!(f.is_epi() == by_cancel, "is_epi = {}, cancellation says {by_cancel}", f.is_epi());
    Ok(())
}

// ---- poly-algebra ----

fn is_identity(f: &Lens) -> bool {
    f.dom() == f.cod() && *f == Lens::identity(f.dom().clone())
}

fn two_sided(f: &Lens, what: &str) -> Outcome {
    let g = lib(f.inverse()).map_err(|e| format!("{what}: {e}"))?;
    ensure!(
        is_identity(&lib(f.then(&g))?) && is_identity(&lib(g.then(f))?),
        "{what}: inverse is not two-sided"
    );
    Ok(())
}

fn compose_fits(p: &FinPoly, q: &FinPoly, r: &FinPoly) -> bool {
    let fits = |a: &FinPoly, b: &FinPoly| compose_position_count(a, b).is_some_and(|n| n <= COMPOSE_LIMIT);
    fits(p, q) && fits(q, r) && fits(&compose(p, q), r) && fits(p, &compose(q, r))
}

fn check_monoidal(x: &Instance, _b: usize) -> Outcome {
    let (p, q, r) = (x.poly(0), x.poly(1), x.poly(2));
    for m in Monoidal::ALL {
        let name = m.name();
        let unit = m.unit();
        ensure!(m.apply(&unit, &p).is_iso(&p), "{name}: I · p ≇ p for {}", p.algebraic());
        ensure!(m.apply(&p, &unit).is_iso(&p), "{name}: p · I ≇ p for {}", p.algebraic());
        two_sided(&m.left_unitor(&p), &format!("{name} left unitor"))?;
        two_sided(&m.right_unitor(&p), &format!("{name} right unitor"))?;
        if m == Monoidal::Compose && !compose_fits(&p, &q, &r) {
            continue;
        }
        let a = m.associator(&p, &q, &r);
        ensure!(a.dom().is_iso(a.cod()), "{name}: (p·q)·r ≇ p·(q·r)");
        two_sided(&a, &format!("{name} associator"))?;
        if let Some(s) = m.symmetry(&p, &q) {
            ensure!(s.dom().is_iso(s.cod()), "{name}: p·q ≇ q·p");
            let back = m.symmetry(&q, &p).expect("symmetric");
            ensure!(is_identity(&lib(s.then(&back))?), "{name}: symmetry is not involutive");
        }
    }
    Ok(())
}

fn check_hom_count(x: &Instance, _b: usize) -> Outcome {
    let (p, q) = (x.poly(0), x.poly(1));
    let listed = hom_iter(&p, &q).count();
    let counted = hom_count(&p, &q);
    ensure!(counted == BigUint::from(listed), "hom_count = {counted}, enumerated {listed}");
    Ok(())
}

fn check_compose_eval(x: &Instance, _b: usize) -> Outcome {
    let (p, q) = (x.poly(0), x.poly(1));
    let set = FinSet::ordinal(x.size(2));
    let lhs = compose(&p, &q).eval(&set).len();
    let rhs = p.eval(&q.eval(&set)).len();
    ensure!(lhs == rhs, "|(p∘q)(X)| = {lhs} but |p(q(X))| = {rhs}");
    let positions = compose(&p, &FinPoly::constant(&set)).num_positions();
    ensure!(positions == p.eval(&set).len(), "|(p∘X)(1)| = {positions} != |p(X)|");
    Ok(())
}

fn check_product_tensor(x: &Instance, _b: usize) -> Outcome {
    let (p, q) = (x.poly(0), x.poly(1));
    let (prod, tens) = (product(&p, &q), tensor(&p, &q));
    let nq = q.num_positions();
    ensure!(prod.num_positions() == p.num_positions() * nq, "product positions");
    ensure!(tens.num_positions() == p.num_positions() * nq, "tensor positions");
    for i in 0..p.num_positions() {
        for j in 0..nq {
            let k = i * nq + j;
            ensure!(prod.dir_count(k) == p.dir_count(i) + q.dir_count(j), "product directions at ({i},{j})");
            ensure!(tens.dir_count(k) == p.dir_count(i) * q.dir_count(j), "tensor directions at ({i},{j})");
        }
    }
    Ok(())
}

fn check_limits(x: &Instance, _b: usize) -> Outcome {
    let mut rng = x.rng();
    let (p, q, r) = (x.poly(0), x.poly(1), x.poly(2));
    let tests = cone_test_objects();
    let report = lib(check_universal_property(&product_diagram(&p, &q), &binary_product(&p, &q), &tests))?;
    ensure!(report.is_ok(), "product: {report}");
    if let (Some(f), Some(g)) = (random_lens(&mut rng, &p, &q), random_lens(&mut rng, &p, &q)) {
        let d = lib(equalizer_diagram(&f, &g))?;
        let report = lib(check_universal_property(&d, &limit(&d), &tests))?;
        ensure!(report.is_ok(), "equalizer: {report}");
    }
    if let (Some(f), Some(g)) = (random_lens(&mut rng, &p, &r), random_lens(&mut rng, &q, &r)) {
        let d = lib(pullback_diagram(&f, &g))?;
        let report = lib(check_universal_property(&d, &limit(&d), &tests))?;
        ensure!(report.is_ok(), "pullback: {report}");
    }
    Ok(())
}

fn check_factorization(x: &Instance, _b: usize) -> Outcome {
    let mut rng = x.rng();
    let Some(f) = random_lens(&mut rng, &x.poly(0), &x.poly(1)) else {
        return Ok(());
    };
    let (v, c) = factor_vert_cart(&f);
    ensure!(v.is_vertical(), "first vertical/cartesian factor is not vertical");
    ensure!(c.is_cartesian(), "second vertical/cartesian factor is not cartesian");
    ensure!(lib(v.then(&c))? == f, "vertical ; cartesian != f");
    let (e, m) = factor_epi_mono(&f);
    ensure!(e.is_epi(), "first epi/mono factor is not epi");
    ensure!(lib(is_mono_by_cancellation(&m, &mono_test_objects()))?, "second epi/mono factor is not mono");
    ensure!(lib(e.then(&m))? == f, "epi ; mono != f");
    Ok(())
}

fn check_closures(x: &Instance, _b: usize) -> Outcome {
    let mut rng = x.rng();
    let (p, q, r) = (x.poly(0), x.poly(1), x.poly(2));
    ensure!(
        hom_count(&product(&p, &q), &r) == hom_count(&p, &cartesian_closure(&r, &q)),
        "|hom(p × q, r)| != |hom(p, r^q)|"
    );
    ensure!(
        hom_count(&tensor(&p, &q), &r) == hom_count(&p, &dirichlet_closure(&q, &r)),
        "|hom(p ⊗ q, r)| != |hom(p, [q, r])|"
    );
    if let Some(f) = random_lens(&mut rng, &product(&p, &q), &r) {
        let g = lib(curry_cartesian(&f, &p, &q))?;
        ensure!(lib(uncurry_cartesian(&g, &q, &r))? == f, "cartesian currying does not round-trip");
    }
    if let Some(f) = random_lens(&mut rng, &tensor(&p, &q), &r) {
        let g = lib(curry_dirichlet(&f, &p, &q))?;
        ensure!(lib(uncurry_dirichlet(&g, &q, &r))? == f, "Dirichlet currying does not round-trip");
    }
    Ok(())
}

fn check_adjunctions(x: &Instance, _b: usize) -> Outcome {
    let report = lib(adjunction_suite(&FinSet::ordinal(x.size(0)), &x.poly(1), &x.poly(2)))?;
    ensure!(report.is_ok(), "{report}");
    Ok(())
}

fn check_base_change(x: &Instance, _b: usize) -> Outcome {
    let mut rng = x.rng();
    let (p, q) = (x.poly(0), x.poly(1));
    let (a, b) = (p.position_set(), q.position_set());
    if b.is_empty() && !a.is_empty() {
        return Ok(());
    }
    let f = SetFn::new(a.clone(), b.clone(), random_table(&mut rng, a.len(), b.len())).expect("total");
    let shriek = lib(base_pushforward(&f, &p, Pushforward::Left))?;
    let star = lib(base_pushforward(&f, &p, Pushforward::Right))?;
    let pulled = lib(base_change(&f, &q))?;
    ensure!(
        lib(vertical_hom_count(&shriek, &q))? == lib(vertical_hom_count(&p, &pulled))?,
        "|hom(f_! p, q)| != |hom(p, f^* q)|"
    );
    ensure!(
        lib(vertical_hom_count(&pulled, &p))? == lib(vertical_hom_count(&q, &star))?,
        "|hom(f^* q, p)| != |hom(q, f_* p)|"
    );
    for g in lib(vertical_homs(&shriek, &q))? {
        let h = lib(transpose_left(&f, &p, &g))?;
        ensure!(h.is_vertical(), "left transpose is not vertical");
        ensure!(lib(untranspose_left(&f, &h, &q))? == g, "left transpose does not round-trip");
    }
    for g in lib(vertical_homs(&pulled, &p))? {
        let h = lib(transpose_right(&f, &g, &q))?;
        ensure!(h.is_vertical(), "right transpose is not vertical");
        ensure!(lib(untranspose_right(&f, &h, &p))? == g, "right transpose does not round-trip");
    }
    Ok(())
}

fn check_distributivity(x: &Instance, _b: usize) -> Outcome {
    let (p, q, r, s) = (x.poly(0), x.poly(1), x.poly(2), x.poly(3));
    let (fw, bw) = distribute_left(&p, &q, &r, &s);
    ensure!(fw.dom().is_iso(fw.cod()), "sides are not isomorphic");
    ensure!(is_identity(&lib(fw.then(&bw))?), "distributor ; inverse != id");
    ensure!(is_identity(&lib(bw.then(&fw))?), "inverse ; distributor != id");
    Ok(())
}

fn check_duoidal(x: &Instance, _b: usize) -> Outcome {
    let mut rng = x.rng();
    let (p1, p2, q1, q2, p1b) = (x.poly(0), x.poly(1), x.poly(2), x.poly(3), x.poly(4));
    let y = FinPoly::y();
    let unit = duoidal(&p1, &y, &q1, &y);
    let n = unit.dom().num_positions();
    ensure!(unit.on_pos_table() == (0..n).collect::<Vec<_>>(), "unit case moves positions");
    ensure!(
        (0..n).all(|i| unit.on_dir_table()[i] == (0..unit.dom().dir_count(i)).collect::<Vec<_>>()),
        "unit case moves directions"
    );
    let Some(h) = random_lens(&mut rng, &p1, &p1b) else {
        return Ok(());
    };
    let id = |p: &FinPoly| Lens::identity(p.clone());
    let left = lib(duoidal(&p1, &p2, &q1, &q2)
        .then(&compose_lens(&tensor_lens(&h, &id(&q1)), &tensor_lens(&id(&p2), &id(&q2)))))?;
    let right = lib(tensor_lens(&compose_lens(&h, &id(&p2)), &compose_lens(&id(&q1), &id(&q2)))
        .then(&duoidal(&p1b, &p2, &q1, &q2)))?;
    ensure!(left == right, "naturality square does not commute");
    Ok(())
}

// ---- comonoid-cat ----

fn check_conversions(x: &Instance, _b: usize) -> Outcome {
    let mut rng = x.rng();
    let k = pick_category(&mut rng);
    let c = lib(category_to_comonoid(k))?;
    let laws = c.check_laws();
    ensure!(laws.is_ok(), "{laws}");
    match c.check_laws_materialized(MATERIALIZE_CAP) {
        Ok(laws) => ensure!(laws.is_ok(), "{laws}"),
        Err(PolyError::TooLarge { .. }) => {}
        Err(e) => return Err(format!("library error: {e}")),
    }
    let rebuilt = lib(Comonoid::from_lenses(&c.counit(), &lib(c.comult(CAP))?))?;
    ensure!(rebuilt == c, "comonoid does not round-trip through its lenses");
    let back = lib(comonoid_to_category(&c))?;
    let report = check_category(&back);
    ensure!(report.is_ok(), "{report}");
    ensure!(find_isomorphism(k, &back).is_some(), "category does not round-trip up to isomorphism");
    Ok(())
}

fn check_morphisms(x: &Instance, _b: usize) -> Outcome {
    let mut rng = x.rng();
    let (a, b) = (pick_category(&mut rng), pick_category(&mut rng));
    let (ca, cb) = (lib(category_to_comonoid(a))?, lib(category_to_comonoid(b))?);
    for f in hom_iter(ca.carrier(), cb.carrier()) {
        let by_laws = check_cofunctor(&lib(Cofunctor::from_lens(a.clone(), b.clone(), &f))?).is_ok();
        let by_squares = lib(is_comonoid_morphism(&f, &ca, &cb, CAP))?;
        ensure!(
            by_laws == by_squares,
            "lens {:?}: cofunctor laws say {by_laws}, comonoid squares say {by_squares}",
            f.on_pos_table()
        );
    }
    Ok(())
}

fn check_structure(x: &Instance, _b: usize) -> Outcome {
    let mut rng = x.rng();
    let (a, b) = (pick_category(&mut rng), pick_category(&mut rng));
    let (ca, cb) = (lib(category_to_comonoid(a))?, lib(category_to_comonoid(b))?);
    for (name, c, objects, morphisms) in [
        (
            "sum",
            comonoid_sum(&ca, &cb),
            a.num_objects() + b.num_objects(),
            a.num_morphisms() + b.num_morphisms(),
        ),
        (
            "tensor",
            comonoid_tensor(&ca, &cb),
            a.num_objects() * b.num_objects(),
            a.num_morphisms() * b.num_morphisms(),
        ),
    ] {
        let laws = c.check_laws();
        ensure!(laws.is_ok(), "{name}: {laws}");
        let k = lib(comonoid_to_category(&c))?;
        ensure!(
            k.num_objects() == objects && k.num_morphisms() == morphisms,
            "{name}: category has {} objects and {} morphisms, expected {objects} and {morphisms}",
            k.num_objects(),
            k.num_morphisms()
        );
    }
    Ok(())
}

fn machine(x: &Instance, rng: &mut ChaCha8Rng) -> Option<MooreMachine> {
    let inputs = named("a", x.size(1), "inputs");
    let outputs = named("b", x.size(2), "outputs");
    random_machine(rng, x.size(0), inputs, outputs)
}

fn same_partition(a: &[usize], b: &[usize]) -> bool {
    (0..a.len()).all(|s| (0..a.len()).all(|t| (a[s] == a[t]) == (b[s] == b[t])))
}

fn check_bisimulation(x: &Instance, _b: usize) -> Outcome {
    let mut rng = x.rng();
    let Some(m) = machine(x, &mut rng) else {
        return Ok(());
    };
    let sys = Mdds::from_moore(&m);
    let n_states = m.states.len();
    let classes: Vec<Vec<usize>> = (0..=n_states + 1).map(|n| sys.bisimulation_classes(n)).collect();
    for n in 0..=n_states {
        let (coarse, fine) = (&classes[n], &classes[n + 1]);
        for s in 0..n_states {
            for t in 0..n_states {
                ensure!(
                    fine[s] != fine[t] || coarse[s] == coarse[t],
                    "{}-bisimilar states {s}, {t} are not {n}-bisimilar",
                    n + 1
                );
            }
        }
    }
    ensure!(
        (0..=n_states).any(|n| same_partition(&classes[n], &classes[n + 1])),
        "bisimilarity has not stabilized by depth {n_states}"
    );
    for n in 0..=2 {
        let behavior = lib(nstep_behavior(sys.state(), sys.dynamics(), n, CAP))?;
        ensure!(
            same_partition(&classes[n], behavior.table()),
            "depth-{n} classes disagree with the n-step behavior"
        );
    }
    Ok(())
}

// ---- dynamics ----

fn check_moore_lens(x: &Instance, _b: usize) -> Outcome {
    let mut rng = x.rng();
    let Some(m) = machine(x, &mut rng) else {
        return Ok(());
    };
    let f = moore_to_lens(&m);
    let back = lib(lens_to_moore(&f, m.states.get(0)))?;
    ensure!(back == m, "lens_to_moore ∘ moore_to_lens != id");
    ensure!(moore_to_lens(&back) == f, "moore_to_lens ∘ lens_to_moore != id");
    let (s, a, b) = (m.states.len() as u32, m.inputs.len() as u32, m.outputs.len() as u32);
    let expected = BigUint::from(b).pow(s) * BigUint::from(s).pow(a * s);
    let counted = hom_count(f.dom(), f.cod());
    ensure!(counted == expected, "{counted} lenses, expected |B|^|S| |S|^(|A||S|) = {expected}");
    Ok(())
}

fn check_unroll(x: &Instance, b: usize) -> Outcome {
    let mut rng = x.rng();
    let Some(m) = machine(x, &mut rng) else {
        return Ok(());
    };
    let sys = Mdds::from_moore(&m);
    for n in 0..=b.min(3) {
        let behavior = lib(nstep_behavior(sys.state(), sys.dynamics(), n, CAP))?;
        for s in 0..m.states.len() {
            let tree = sys.unroll(s, n).label();
            let image = behavior.cod().get(behavior.apply_index(s));
            ensure!(tree == image, "state {s}, depth {n}: unrolled `{tree}`, behavior `{image}`");
        }
    }
    Ok(())
}

/// The feedback wiring of a plant `B_p y^{A × B_c}` and a controller
/// `B_c y^{B_p}` into `B_p y^A`.
fn feedback_wiring(plant: &MooreMachine, ctrl: &MooreMachine, external: &FinSet) -> Lens {
    let (nbp, nbc, na) = (plant.outputs.len(), ctrl.outputs.len(), external.len());
    let dom = tensor(&plant.interface(), &ctrl.interface());
    let cod = FinPoly::monomial(&plant.outputs, external);
    let mut on_pos = Vec::with_capacity(nbp * nbc);
    let mut on_dir = Vec::with_capacity(nbp * nbc);
    for bp in 0..nbp {
        for bc in 0..nbc {
            on_pos.push(bp);
            on_dir.push((0..na).map(|a| (a * nbc + bc) * nbp + bp).collect());
        }
    }
    Lens::new(dom, cod, on_pos, on_dir).expect("well-typed")
}

fn check_coupling(x: &Instance, _b: usize) -> Outcome {
    let mut rng = x.rng();
    let external = named("a", x.size(2), "inputs");
    let plant_out = named("p", x.size(3), "outputs");
    let ctrl_out = named("c", x.size(4), "outputs");
    let Some(plant) = random_machine(&mut rng, x.size(0), external.product(&ctrl_out), plant_out.clone()) else {
        return Ok(());
    };
    let Some(ctrl) = random_machine(&mut rng, x.size(1), plant_out, ctrl_out) else {
        return Ok(());
    };
    if external.is_empty() {
        return Ok(());
    }
    let wiring = feedback_wiring(&plant, &ctrl, &external);
    let sys = lib(juxtapose_all(&[&Mdds::from_moore(&plant), &Mdds::from_moore(&ctrl)]).apply_wiring(&wiring))?;
    let len = rng.gen_range(0..=5);
    let inputs: Vec<usize> = random_table(&mut rng, len, external.len());
    let labels: Vec<&str> = inputs.iter().map(|&a| external.get(a)).collect();
    let trace = lib(sys.run_open(0, &labels))?;
    let nc = ctrl.states.len();
    let (mut sp, mut sc) = (0, 0);
    for (k, &a) in inputs.iter().enumerate() {
        let (bp, bc) = (plant.read(sp), ctrl.read(sc));
        let step = &trace.steps[k];
        ensure!(step.position == plant.outputs.get(bp), "step {k}: output `{}`", step.position);
        ensure!(lib(sys.state_index(&step.state))? == sp * nc + sc, "step {k}: state `{}`", step.state);
        let (next_p, next_c) = (plant.next(sp, a * ctrl.outputs.len() + bc), ctrl.next(sc, bp));
        sp = next_p;
        sc = next_c;
    }
    ensure!(lib(sys.state_index(&trace.final_state))? == sp * nc + sc, "final state `{}`", trace.final_state);
    ensure!(trace.final_position == plant.outputs.get(plant.read(sp)), "final output");
    Ok(())
}

fn check_overlay(x: &Instance, _b: usize) -> Outcome {
    let mut rng = x.rng();
    let c = contractible(&FinSet::ordinal(x.size(0)));
    let (p, q) = (x.poly(1), x.poly(2));
    let (Some(f), Some(g)) = (random_lens(&mut rng, c.carrier(), &p), random_lens(&mut rng, c.carrier(), &q)) else {
        return Ok(());
    };
    let h = lib(overlay(&f, &g))?;
    let (pi0, pi1) = (product_projection(&[&p, &q], 0), product_projection(&[&p, &q], 1));
    ensure!(lib(h.then(&pi0))? == f && lib(h.then(&pi1))? == g, "overlay does not commute with projections");
    let mut mediators = 0;
    for k in hom_iter(c.carrier(), &product(&p, &q)) {
        if lib(k.then(&pi0))? == f && lib(k.then(&pi1))? == g {
            ensure!(k == h, "a different lens commutes with both projections");
            mediators += 1;
        }
    }
    ensure!(mediators == 1, "{mediators} lenses commute with both projections");
    Ok(())
}

fn check_traces(x: &Instance, _b: usize) -> Outcome {
    let mut rng = x.rng();
    if let Some(m) = machine(x, &mut rng) {
        let sys = Mdds::from_moore(&m);
        let len = if m.inputs.is_empty() { 0 } else { rng.gen_range(0..=6) };
        let inputs: Vec<&str> = random_table(&mut rng, len, m.inputs.len())
            .into_iter()
            .map(|a| m.inputs.get(a))
            .collect();
        let trace = lib(sys.run_open(0, &inputs))?;
        let report = trace.validate(&sys);
        ensure!(report.is_ok(), "{report}");
        let moore = lib(run_moore(&m, &inputs))?;
        ensure!(moore.steps == trace.steps, "Moore run and system run disagree");
    }
    let k = pick_category(&mut rng);
    let c = lib(category_to_comonoid(k))?;
    let p = x.poly(3);
    let Some(f) = random_lens(&mut rng, c.carrier(), &p) else {
        return Ok(());
    };
    let sys = lib(Mdds::new(c, f))?;
    let states = sys.state().carrier().num_positions();
    if states == 0 {
        return Ok(());
    }
    let s0 = rng.gen_range(0..states);
    let (mut s, mut dirs) = (s0, Vec::new());
    for _ in 0..rng.gen_range(0..=5) {
        let i = sys.dynamics().on_pos(s);
        let n = p.dir_count(i);
        if n == 0 {
            break;
        }
        let d = rng.gen_range(0..n);
        dirs.push(p.dirs(i).get(d).to_string());
        s = sys.step_index(s, d).1;
    }
    let trace = lib(sys.run(s0, &dirs))?;
    let report = trace.validate(&sys);
    ensure!(report.is_ok(), "{report}");
    Ok(())
}
