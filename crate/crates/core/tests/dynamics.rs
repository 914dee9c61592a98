use std::sync::Arc;

use polydyn::algebra::{
    hom_enumerate, product_projection, tensor_all, Monoidal, DEFAULT_CAP,
};
use polydyn::category::{comonoid_to_category, contractible, nstep_behavior, trivial, FinCat, category_to_comonoid};
use polydyn::dynamics::{juxtapose, juxtapose_all, moore_to_lens, overlay, run_moore, Mdds, MooreMachine};
use polydyn::odometer::Odometer;
use polydyn::{FinPoly, FinSet, Lens, PolyError};

fn set(xs: &[&str]) -> FinSet {
    FinSet::of(xs)
}

fn toggle() -> MooreMachine {
    MooreMachine::from_tables(
        set(&["off", "on"]),
        set(&["tick"]),
        set(&["0", "1"]),
        vec![0, 1],
        vec![vec![1], vec![0]],
        0,
    )
    .unwrap()
}

/// Every machine with the given sizes, in a fixed order.
fn machines(ns: usize, na: usize, nb: usize) -> Vec<MooreMachine> {
    let s: Vec<String> = (0..ns).map(|k| format!("s{k}")).collect();
    let a: Vec<String> = (0..na).map(|k| format!("a{k}")).collect();
    let b: Vec<String> = (0..nb).map(|k| format!("b{k}")).collect();
    let (s, a, b) = (FinSet::of(&s), FinSet::of(&a), FinSet::of(&b));
    let mut out = Vec::new();
    for r in Odometer::functions(ns, nb) {
        for u in Odometer::functions(ns * na, ns) {
            let table = (0..ns).map(|x| u[x * na..(x + 1) * na].to_vec()).collect();
            out.push(MooreMachine::from_tables(s.clone(), a.clone(), b.clone(), r.clone(), table, 0).unwrap());
        }
    }
    out
}

#[test]
fn closed_interface_steps_uniquely() {
    let m = MooreMachine::from_tables(set(&["x", "y"]), set(&["*"]), set(&["*"]), vec![0, 0], vec![vec![1], vec![0]], 0)
        .unwrap();
    let sys = Mdds::from_moore(&m);
    assert_eq!(sys.interface().num_positions(), 1);
    let t = sys.run_closed(0, 3).unwrap();
    assert_eq!(t.states(), ["x", "y", "x", "y"]);
    assert!(t.validate(&sys).is_ok());
}

#[test]
fn moore_special_case_agrees_stepwise() {
    for m in machines(2, 2, 2) {
        let sys = Mdds::from_moore(&m);
        for inputs in Odometer::functions(4, 2) {
            let labels: Vec<&str> = inputs.iter().map(|&k| m.inputs.get(k)).collect();
            let a = run_moore(&m, &labels).unwrap();
            let mut b = sys.run_open(0, &labels).unwrap();
            assert!(b.validate(&sys).is_ok());
            b.history = None;
            assert_eq!(a, b);
        }
    }
}

#[test]
fn step_rejects_directions_of_the_other_mode() {
    // interface y^{A} + y: mode "talk" accepts A, mode "idle" only "*"
    let interface = FinPoly::new(vec![
        ("talk".into(), set(&["hi", "bye"])),
        ("idle".into(), set(&["*"])),
    ])
    .unwrap();
    let c = contractible(&set(&["p", "q"]));
    let f = Lens::new(c.carrier_arc().clone(), Arc::new(interface), vec![0, 1], vec![vec![0, 1], vec![0]]).unwrap();
    let sys = Mdds::new(c, f).unwrap();
    assert_eq!(sys.step(0, "bye").unwrap(), ("talk".to_string(), 1));
    assert!(matches!(sys.step(1, "hi"), Err(PolyError::InvalidDirection { .. })));
    assert!(sys.run_open(0, &["hi"]).is_err());
}

#[test]
fn unroll_small_depths() {
    let sys = Mdds::from_moore(&toggle());
    assert_eq!(sys.unroll(0, 0).depth(), 0);
    assert_eq!(sys.unroll(0, 0).label(), "*");
    let leaf = sys.unroll(1, 1);
    assert_eq!(leaf.label(), "1");
}

#[test]
fn toggle_depth_three_alternates() {
    let sys = Mdds::from_moore(&toggle());
    let t = sys.unroll(0, 3);
    let mut node = &t;
    let mut seen = Vec::new();
    while node.depth() > 0 {
        seen.push(node.position().unwrap().to_string());
        node = &node.branches()[0].1;
    }
    assert_eq!(seen, ["0", "1", "0"]);
}

#[test]
fn unroll_matches_nstep_behavior() {
    for ns in 1..=3 {
        for m in machines(ns, 1, 2).into_iter().chain(machines(ns.min(2), 2, 2)) {
            let sys = Mdds::from_moore(&m);
            for n in 0..=3 {
                let beh = nstep_behavior(sys.state(), sys.dynamics(), n, DEFAULT_CAP).unwrap();
                for s in 0..m.states.len() {
                    let tree = sys.unroll(s, n);
                    assert_eq!(beh.apply(m.states.get(s)).unwrap(), tree.label());
                }
            }
        }
    }
}

/// `C -> C^{∘n} -> p^{∘n}` with the comultiplication materialized, for
/// n = 2: the position of `p ∘ p` reached from `s`.
#[test]
fn nstep_two_agrees_with_materialized_comultiplication() {
    for m in machines(2, 2, 2) {
        let sys = Mdds::from_moore(&m);
        let delta = sys.state().comult(DEFAULT_CAP).unwrap();
        let f = sys.dynamics();
        let via = delta.then(&polydyn::algebra::compose_lens(f, f)).unwrap();
        let beh = nstep_behavior(sys.state(), f, 2, DEFAULT_CAP).unwrap();
        for s in 0..2 {
            assert_eq!(via.cod().position_label(via.on_pos(s)), beh.apply(m.states.get(s)).unwrap());
        }
    }
}

#[test]
fn equal_readouts_separate_at_depth_two() {
    // s and t both read x; s stays put, t moves to u which reads z
    let m = MooreMachine::from_tables(
        set(&["s", "t", "u"]),
        set(&["a"]),
        set(&["x", "z"]),
        vec![0, 0, 1],
        vec![vec![0], vec![2], vec![2]],
        0,
    )
    .unwrap();
    let sys = Mdds::from_moore(&m);
    let b1 = nstep_behavior(sys.state(), sys.dynamics(), 1, DEFAULT_CAP).unwrap();
    let b2 = nstep_behavior(sys.state(), sys.dynamics(), 2, DEFAULT_CAP).unwrap();
    assert_eq!(b1.apply("s"), b1.apply("t"));
    assert_ne!(b2.apply("s"), b2.apply("t"));
    let classes = sys.bisimulation_classes(2);
    assert_ne!(classes[0], classes[1]);
}

#[test]
fn bisimilarity_refines_and_stabilizes() {
    for m in machines(3, 1, 2) {
        let sys = Mdds::from_moore(&m);
        let n_states = m.states.len();
        let mut prev = sys.bisimulation_classes(0);
        let mut stable_at = None;
        for n in 1..=n_states + 1 {
            let cur = sys.bisimulation_classes(n);
            // refinement: equal now implies equal before
            for a in 0..n_states {
                for b in 0..n_states {
                    if cur[a] == cur[b] {
                        assert_eq!(prev[a], prev[b]);
                    }
                }
            }
            // matches equality of nstep behaviors
            let beh = nstep_behavior(sys.state(), sys.dynamics(), n, DEFAULT_CAP).unwrap();
            for a in 0..n_states {
                for b in 0..n_states {
                    assert_eq!(cur[a] == cur[b], beh.table()[a] == beh.table()[b]);
                }
            }
            if stable_at.is_none() && partition(&cur) == partition(&prev) {
                stable_at = Some(n - 1);
            }
            prev = cur;
        }
        assert!(stable_at.is_some_and(|n| n <= n_states));
    }
}

fn partition(classes: &[usize]) -> Vec<Vec<usize>> {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (x, &c) in classes.iter().enumerate() {
        match blocks.iter_mut().find(|b| classes[b[0]] == c) {
            Some(b) => b.push(x),
            None => blocks.push(vec![x]),
        }
    }
    blocks
}

#[test]
fn overlay_is_the_product_pairing() {
    // two 4-state systems with finite stand-ins for real-valued readouts
    let states = set(&["1", "2", "3", "4"]);
    let c = contractible(&states);
    let p = FinPoly::monomial(&set(&["u0", "u1"]), &set(&["r", "b"]));
    let q = FinPoly::monomial(&set(&["v0", "v1"]), &set(&["g"]));
    let f = Lens::new(c.carrier_arc().clone(), Arc::new(p.clone()), vec![0, 1, 0, 1], vec![
        vec![1, 2], vec![2, 3], vec![3, 0], vec![0, 1],
    ])
    .unwrap();
    let g = Lens::new(c.carrier_arc().clone(), Arc::new(q.clone()), vec![0, 0, 1, 1], vec![
        vec![3], vec![0], vec![1], vec![2],
    ])
    .unwrap();
    let h = overlay(&f, &g).unwrap();
    assert_eq!(h.dom().num_positions(), 4);
    assert!(h.cod().is_monomial());
    assert_eq!(h.cod().num_positions(), 4);
    assert_eq!(h.cod().dir_count(0), 3);
    let factors = [&p, &q];
    assert_eq!(h.then(&product_projection(&factors, 0)).unwrap(), f);
    assert_eq!(h.then(&product_projection(&factors, 1)).unwrap(), g);
    // uniqueness: no other lens commutes with both projections
    let small = contractible(&set(&["1", "2"]));
    let f2 = Lens::new(small.carrier_arc().clone(), Arc::new(FinPoly::from_exponents(&[1, 0])), vec![0, 1], vec![vec![1], vec![]]).unwrap();
    let g2 = Lens::new(small.carrier_arc().clone(), Arc::new(FinPoly::from_exponents(&[2])), vec![0, 0], vec![vec![0, 1], vec![1, 1]]).unwrap();
    let h2 = overlay(&f2, &g2).unwrap();
    let cods = [f2.cod(), g2.cod()];
    let commuting: Vec<Lens> = hom_enumerate(small.carrier(), h2.cod(), DEFAULT_CAP)
        .unwrap()
        .into_iter()
        .filter(|k| {
            k.then(&product_projection(&cods, 0)).unwrap() == f2 && k.then(&product_projection(&cods, 1)).unwrap() == g2
        })
        .collect();
    assert_eq!(commuting, vec![h2]);
    let ff = overlay(&f, &f).unwrap();
    assert_eq!(ff.then(&product_projection(&[&p, &p], 1)).unwrap(), f);
}

#[test]
fn juxtapose_with_trivial_system() {
    let sys = Mdds::from_moore(&toggle());
    let unit = Mdds::new(trivial(), Lens::identity(FinPoly::y())).unwrap();
    let both = juxtapose_all(&[&sys, &unit]);
    let dom = both.state().carrier();
    assert_eq!(dom.num_positions(), 2);
    // after the unitor on the interface, the juxtaposed system behaves like the original
    let w = Monoidal::Tensor.right_unitor(sys.interface());
    let rewired = both.apply_wiring(&w).unwrap();
    assert_eq!(rewired.dynamics().on_pos_table(), sys.dynamics().on_pos_table());
    assert_eq!(rewired.dynamics().on_dir_table(), sys.dynamics().on_dir_table());
    let direct = juxtapose(sys.dynamics(), &Lens::identity(FinPoly::y()));
    assert_eq!(direct.dom().num_positions(), 2);
}

#[test]
fn juxtaposed_positions_are_products() {
    let a = Mdds::from_moore(&toggle());
    let b = Mdds::from_moore(&machines(3, 1, 2)[5]);
    let j = juxtapose_all(&[&a, &b]);
    assert_eq!(j.state().carrier().num_positions(), 6);
    assert_eq!(*j.state().carrier(), tensor_all(&[a.state().carrier(), b.state().carrier()]));
    assert!(j.state().check_laws().is_ok());
}

#[test]
fn history_in_contractible_state_is_the_unique_arrow() {
    let sys = Mdds::from_moore(&toggle());
    let k = comonoid_to_category(sys.state()).unwrap();
    assert_eq!(sys.trace_history(0, &[] as &[&str]).unwrap(), k.identity(0));
    let h = sys.trace_history(0, &["tick", "tick", "tick"]).unwrap();
    let m = k.morphism(h);
    assert_eq!((m.dom, m.cod), (0, 1));
    assert_eq!(k.hom(0, 1), vec![h]);
    let t = sys.run(0, &["tick"; 3]).unwrap();
    assert_eq!(t.history.as_deref(), Some(m.label.as_str()));
}

#[test]
fn parallel_arrows_give_distinct_histories() {
    // objects a, b with two arrows u, v: a -> b
    let k = FinCat::from_labels(
        &["a", "b"],
        &[("ida", "a", "a"), ("idb", "b", "b"), ("u", "a", "b"), ("v", "a", "b")],
        &[("a", "ida"), ("b", "idb")],
        &[],
    )
    .unwrap();
    let c = category_to_comonoid(&k).unwrap();
    // interface y^{left,right} + y: at a choose an arrow, at b idle
    let interface = FinPoly::new(vec![
        ("choose".into(), set(&["left", "right"])),
        ("done".into(), set(&["*"])),
    ])
    .unwrap();
    let f = Lens::new(c.carrier_arc().clone(), Arc::new(interface), vec![0, 1], vec![vec![1, 2], vec![0]]).unwrap();
    let sys = Mdds::new(c, f).unwrap();
    let left = sys.trace_history(0, &["left", "*"]).unwrap();
    let right = sys.trace_history(0, &["right", "*"]).unwrap();
    let cat = comonoid_to_category(sys.state()).unwrap();
    assert_eq!(cat.morphism(left).cod, cat.morphism(right).cod);
    assert_ne!(left, right);
    assert!(sys.trace_history(0, &["*"]).is_err());
}

#[test]
fn trace_validation_catches_tampering() {
    let sys = Mdds::from_moore(&toggle());
    let mut t = sys.run_open(0, &["tick", "tick"]).unwrap();
    assert!(t.validate(&sys).is_ok());
    t.steps[1].state = "off".into();
    assert!(!t.validate(&sys).is_ok());
}

#[test]
fn moore_lens_counts() {
    for (ns, na, nb) in [(1, 1, 1), (1, 2, 2), (2, 1, 2), (2, 2, 1), (2, 2, 2)] {
        let ms = machines(ns, na, nb);
        let expected = nb.pow(ns as u32) * ns.pow((na * ns) as u32);
        assert_eq!(ms.len(), expected);
        let lenses = hom_enumerate(
            contractible(&ms[0].states).carrier(),
            &ms[0].interface(),
            DEFAULT_CAP,
        )
        .unwrap();
        assert_eq!(lenses.len(), expected);
        let from_machines: std::collections::HashSet<_> = ms
            .iter()
            .map(|m| {
                let f = moore_to_lens(m);
                (f.on_pos_table().to_vec(), f.on_dir_table().to_vec())
            })
            .collect();
        assert_eq!(from_machines.len(), expected);
    }
}
