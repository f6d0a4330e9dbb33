use cutkit::format::{emit_json, emit_text, parse, parse_json, parse_text, FormatError, Graph};
use cutkit::gen::{generate, GenKind, GenParams};
use cutkit_core::INFINITE;

#[test]
fn two_node_digraph() {
    let inst = parse_text("p digraph 2 1\na 1 2 5\n").unwrap();
    let Graph::Directed(g) = &inst.graph else { panic!("expected a digraph") };
    assert_eq!(g.node_count(), 2);
    assert_eq!(g.arc_count(), 1);
    let a = g.arc(0);
    assert_eq!((a.tail, a.head, a.weight), (0, 1, 5));
}

#[test]
fn full_text_round_trip() {
    let src = "# demo\np digraph 3 3\na 1 2 5\na 2 3 inf\na 1 2 1\nn 2 4\nn 3 inf\nt s 1\nt t 3\nl 2 middle node\n";
    let inst = parse_text(src).unwrap();
    let Graph::Directed(g) = &inst.graph else { panic!() };
    assert_eq!(g.arc(1).weight, INFINITE);
    assert_eq!(g.node_weights().unwrap(), &[1, 4, INFINITE]);
    assert_eq!(g.labels().unwrap()[1], "middle node");
    assert_eq!(inst.terminals["t"], 2);
    assert_eq!(parse_text(&emit_text(&inst)).unwrap(), inst);
    assert_eq!(parse_json(&emit_json(&inst)).unwrap(), inst);
}

#[test]
fn undirected_round_trip() {
    let inst = parse_text("p graph 3 2\ne 3 1 2\ne 2 3 1\nt a 1\n").unwrap();
    assert!(matches!(inst.graph, Graph::Undirected(_)));
    assert_eq!(parse(&emit_json(&inst)).unwrap(), inst);
    let canon = inst.canonical();
    assert!(emit_text(&canon).contains("e 1 3 2"));
    assert_eq!(canon.canonical(), canon);
}

#[test]
fn canonical_ignores_arc_order() {
    let a = parse_text("p digraph 3 2\na 2 3 1\na 1 2 4\n").unwrap();
    let b = parse_text("p digraph 3 2\na 1 2 4\na 2 3 1\n").unwrap();
    assert_ne!(a, b);
    assert_eq!(a.canonical(), b.canonical());
}

#[test]
fn rejects_malformed_input() {
    let bad = [
        "a 1 2 3\n",
        "p digraph 2\n",
        "p tree 2 0\n",
        "p digraph 2 1\na 1 1 3\n",
        "p digraph 2 1\na 1 2 -3\n",
        "p digraph 2 1\na 1 3 3\n",
        "p digraph 2 1\na 0 1 3\n",
        "p digraph 2 2\na 1 2 3\n",
        "p graph 2 1\na 1 2 3\n",
        "p digraph 2 1\nx 1 2\na 1 2 1\n",
    ];
    for src in bad {
        assert!(parse_text(src).is_err(), "accepted {src:?}");
    }
    assert!(matches!(parse_text("p digraph 2 1\na 1 1 3\n"), Err(FormatError::Syntax { line: 2, .. })));
    assert!(parse_json(r#"{"kind":"digraph","n":2,"arcs":[[1,2,-1]]}"#).is_err());
    assert!(parse_json(r#"{"kind":"digraph","n":2,"arcs":[[1,1,1]]}"#).is_err());
    assert!(parse_json(r#"{"kind":"digraph","n":2,"edges":[[1,2,1]]}"#).is_err());
    assert!(parse_json(r#"{"kind":"digraph","n":2,"arcs":[[1,3,1]]}"#).is_err());
}

#[test]
fn json_accepts_inf_weights() {
    let inst = parse_json(r#"{"kind":"digraph","n":2,"arcs":[[1,2,"inf"]],"node_weights":[1,"inf"],"terminals":{"s":1}}"#).unwrap();
    let Graph::Directed(g) = &inst.graph else { panic!() };
    assert_eq!(g.arc(0).weight, INFINITE);
    assert_eq!(g.node_weight(1), INFINITE);
}

#[test]
fn dab_json_has_ab_plus_two_nodes() {
    let p = GenParams { a: 2, b: 4, ..GenParams::default() };
    let inst = generate(GenKind::Dab, &p).unwrap();
    let v: serde_json::Value = serde_json::from_str(&emit_json(&inst)).unwrap();
    assert_eq!(v["n"], 10);
    assert_eq!(parse(&emit_json(&inst)).unwrap(), inst);
}

#[test]
fn generated_instances_round_trip() {
    for kind in [GenKind::Digraph, GenKind::Graph, GenKind::Dab, GenKind::Skeleton, GenKind::Partite, GenKind::Cycle] {
        let inst = generate(kind, &GenParams::default()).unwrap();
        assert_eq!(parse(&emit_text(&inst)).unwrap(), inst, "{kind:?}");
        assert_eq!(parse(&emit_json(&inst)).unwrap(), inst, "{kind:?}");
    }
}
