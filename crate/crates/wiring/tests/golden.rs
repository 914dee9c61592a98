use std::collections::HashMap;

use polydyn::dynamics::{lens_to_moore, moore_to_lens};
use polydyn::{FinPoly, FinSet, Lens};
use polydyn_wiring::{compile_machines, compile_system, compile_wiring, parse, print, validate};

fn data(name: &str) -> String {
    let path = format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn tuple(parts: &[&str]) -> String {
    format!("({})", parts.join(","))
}

#[test]
fn golden_files_print_back_verbatim() {
    for name in ["control.wd", "supplier.wd", "attach.wd"] {
        let text = data(name);
        let spec = parse(&text).unwrap();
        assert_eq!(print(&spec), text, "{name}");
        assert_eq!(parse(&print(&spec)).unwrap(), spec, "{name}");
        assert!(validate(&spec).is_ok(), "{name}: {}", validate(&spec));
    }
}

#[test]
fn control_program_shape() {
    let spec = parse(&data("control.wd")).unwrap();
    assert_eq!(spec.boxes().count(), 2);
    assert_eq!(spec.connects().count(), 4);
    assert_eq!(spec.outer().unwrap().name.name, "System");
}

/// `B y^C ⊗ C y^(AB) -> C y^A`: project `(b,c) ↦ c`, route `a ↦ (c,(a,b))`.
#[test]
fn control_compiles_to_projection_and_symmetry() {
    let (a, b, c) = (["a0", "a1"], ["b0", "b1"], ["c0", "c1"]);
    let mut positions = Vec::new();
    let mut on_pos = HashMap::new();
    let mut on_dir = HashMap::new();
    for bi in b {
        for ci in c {
            let pos = tuple(&[bi, ci]);
            let mut dirs = Vec::new();
            for cd in c {
                for ad in a {
                    for bd in b {
                        dirs.push(tuple(&[cd, &tuple(&[ad, bd])]));
                    }
                }
            }
            positions.push((pos.clone(), FinSet::of(&dirs)));
            on_pos.insert(pos.clone(), ci.to_string());
            let back = a.iter().map(|ad| (ad.to_string(), tuple(&[ci, &tuple(&[ad, bi])]))).collect();
            on_dir.insert(pos, back);
        }
    }
    let dom = FinPoly::new(positions).unwrap();
    let cod = FinPoly::monomial(&FinSet::of(&c), &FinSet::of(&a));
    let expected = Lens::from_labels(dom, cod, &on_pos, &on_dir).unwrap();
    let compiled = compile_wiring(&parse(&data("control.wd")).unwrap()).unwrap();
    assert_eq!(compiled, expected);
}

/// The company's mode picks the supplier whose widget it receives.
#[test]
fn supplier_routing_is_evaluation() {
    let lens = compile_wiring(&parse(&data("supplier.wd")).unwrap()).unwrap();
    let (dom, cod) = (lens.dom(), lens.cod());
    assert_eq!(cod, &FinPoly::y());
    assert_eq!(dom.exponents(), vec![2; 8]);
    for i in 0..dom.num_positions() {
        let label = dom.position_label(i);
        let parts: Vec<&str> = label.trim_matches(|c| c == '(' || c == ')').split(',').collect();
        let (mode, w1, w2) = (parts[0], parts[1], parts[2]);
        let received = if mode == "1" { w1 } else { w2 };
        let d = dom.dirs(i).get(lens.on_dir(i, 0));
        assert_eq!(d, tuple(&[received, "*", "*"]), "at {label}");
    }
}

/// Detached, the unit sees the default; attached, it sees the other unit.
#[test]
fn attach_routing_is_by_cases() {
    let lens = compile_wiring(&parse(&data("attach.wd")).unwrap()).unwrap();
    let dom = lens.dom();
    assert_eq!(lens.cod(), &FinPoly::y());
    assert_eq!(dom.exponents(), vec![3; 6]);
    for i in 0..dom.num_positions() {
        let label = dom.position_label(i);
        let parts: Vec<&str> = label.trim_matches(|c| c == '(' || c == ')').split(',').collect();
        let (mode, x) = (parts[0], parts[1]);
        assert_eq!(parts[2], "*");
        let seen = if mode == "1" { "x0" } else { x };
        assert_eq!(dom.dirs(i).get(lens.on_dir(i, 0)), tuple(&["*", "*", seen]), "at {label}");
    }
}

#[test]
fn plant_table_round_trips_through_lenses() {
    let spec = parse(&data("control.wd")).unwrap();
    let machines = compile_machines(&spec).unwrap();
    assert_eq!(machines.len(), 2);
    let plant = &machines[1];
    assert_eq!(plant.owner, "Plant");
    let m = &plant.machine;
    assert_eq!(m.states.elements(), ["p0", "p1"]);
    assert_eq!(m.inputs.elements(), ["(a0,b0)", "(a0,b1)", "(a1,b0)", "(a1,b1)"]);
    assert_eq!(m.outputs.elements(), ["c0", "c1"]);
    let lens = moore_to_lens(m);
    assert_eq!(&lens_to_moore(&lens, "p0").unwrap(), m);
    // p toggles exactly when a ≠ b in index
    for s in 0..2 {
        for (k, toggles) in [false, true, true, false].into_iter().enumerate() {
            let next = m.next(s, k);
            assert_eq!(next != s, toggles, "state {s} input {k}");
        }
    }
}

/// Hand-coupled supplier run: the company reads the widget of the supplier
/// its current mode names.
#[test]
fn supplier_simulation_tracks_mode() {
    let spec = parse(&data("supplier.wd")).unwrap();
    let sys = compile_system(&spec).unwrap();
    let trace = sys.mdds.run_closed(sys.initial, 8).unwrap();
    assert!(trace.validate(&sys.mdds).is_ok());

    let [company, s1, s2] = [0, 1, 2].map(|k| &sys.machines[k].machine);
    let (mut c, mut u, mut v) = (0, 0, 0);
    let mut modes = Vec::new();
    for state in trace.states() {
        let label = format!("({},{},{})", company.states.get(c), s1.states.get(u), s2.states.get(v));
        assert_eq!(state, label);
        let mode = company.outputs.get(company.read(c)).to_string();
        let source = if mode == "1" { s1.read(u) } else { s2.read(v) };
        let widget = s1.outputs.get(source);
        let a = company.inputs.index_of(widget).unwrap();
        (c, u, v) = (company.next(c, a), s1.next(u, 0), s2.next(v, 0));
        modes.push(mode);
    }
    assert!(modes.windows(2).any(|w| w[0] != w[1]), "mode never changes: {modes:?}");
}
