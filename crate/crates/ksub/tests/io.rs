use ksub::dataset::{Dataset, DatasetSpec};
use ksub::io::{load_signed_snap, parse_edge_list, StateGraphJson};
use ksub::Error;
use ksub_core::{enumerate_states, Graph, Sign};
use proptest::prelude::*;

const FIXTURE: &str = include_str!("../fixtures/signed_synthetic.csv");

#[test]
fn edge_lists_skip_comments_and_accept_commas() {
    let g = parse_edge_list("# a path\n10 20\n20,30\n\n% more\n30\t40 extra\n20 10\n").unwrap();
    assert_eq!((g.node_count(), g.edge_count()), (4, 3));
    assert_eq!(g.labels(), &[10, 20, 30, 40]);
}

#[test]
fn edge_list_errors_name_the_line() {
    match parse_edge_list("1 2\n3 x\n") {
        Err(Error::Parse { line: 2, msg }) => assert!(msg.contains("\"x\"")),
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(
        parse_edge_list("1 2\n3\n"),
        Err(Error::Parse { line: 2, .. })
    ));
    assert!(parse_edge_list("# nothing\n").is_err());
}

#[test]
fn signed_projection_examples() {
    let s = load_signed_snap("1,2,4,123\n2,1,-3,124\n").unwrap();
    assert_eq!(s.graph.graph().edge_count(), 1);
    assert_eq!(s.graph.edge_sign(0), Sign::Negative);
    assert_eq!(s.graph.directed().len(), 2);

    let s = load_signed_snap("1,2,4,123\n").unwrap();
    assert_eq!(s.graph.graph().edge_count(), 1);
    assert_eq!(s.graph.edge_sign(0), Sign::Positive);
    assert!(s.warnings.is_empty());
}

#[test]
fn signed_errors_and_warnings() {
    assert!(matches!(
        load_signed_snap("1,2,4,1\n1,2,4\n"),
        Err(Error::Parse { line: 2, .. })
    ));
    assert!(matches!(
        load_signed_snap("1,2,four,1\n"),
        Err(Error::Parse { line: 1, .. })
    ));
    let s = load_signed_snap("1,2,11,1\n2,3,0,2\n").unwrap();
    assert_eq!(s.graph.directed().len(), 2);
    assert!(s
        .warnings
        .iter()
        .any(|w| w.starts_with("line 1: rating 11")));
    assert!(s.warnings.iter().any(|w| w.contains("zero ratings")));
}

#[test]
fn synthetic_fixture_shape() {
    let s = load_signed_snap(FIXTURE).unwrap();
    let g = s.graph.graph();
    assert_eq!(FIXTURE.lines().count(), 50);
    assert_eq!(s.graph.directed().len(), 50);
    assert_eq!((g.node_count(), g.edge_count()), (24, 40));
    assert_eq!(s.graph.negative_count(), 14);
    assert_eq!(s.graph.zero_only_count(), 2);
    assert_eq!((g.max_degree(), g.diameter().unwrap()), (9, 6));
}

#[test]
fn state_graph_json_round_trip() {
    let g = Graph::from_edges([(5, 6), (6, 7), (7, 8)]).unwrap();
    let sg = enumerate_states(&g, 3).unwrap();
    let j = StateGraphJson::new(&g, &sg);
    assert_eq!(j.states, vec![vec![5, 6, 7], vec![6, 7, 8]]);
    assert_eq!(j.edges, vec![[0, 1]]);
    assert_eq!(j.diameter, Some(1));
    let back: StateGraphJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
    assert_eq!(back, j);
}

#[test]
fn dataset_specs() {
    for s in ["karate", "ba:100:2:0", "file:x.txt", "signed:a/b.csv"] {
        assert_eq!(s.parse::<DatasetSpec>().unwrap().to_string(), s);
    }
    assert_eq!(
        "ba:100:2".parse::<DatasetSpec>().unwrap(),
        DatasetSpec::Ba {
            n: 100,
            m: 2,
            seed: 0
        }
    );
    for bad in ["", "ba:2:2", "ba:10", "ba:x:2", "file:", "edges.txt"] {
        assert!(
            matches!(bad.parse::<DatasetSpec>(), Err(Error::Dataset { .. })),
            "{bad}"
        );
    }
    let d = Dataset::load(&"ba:50:2:3".parse().unwrap()).unwrap();
    assert_eq!(d.graph().node_count(), 50);
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/signed_synthetic.csv");
    let d = Dataset::load(&format!("signed:{fixture}").parse().unwrap()).unwrap();
    assert_eq!(d.graph().edge_count(), 40);
    assert!(d.signed().is_some());
    assert!(Dataset::load(&"file:/no/such/file".parse().unwrap()).is_err());
}

proptest! {
    #[test]
    fn signed_text_round_trip(
        raw in prop::collection::vec((0u64..30, 0u64..30, -12i32..=12, 0i64..1_000_000), 1..80),
    ) {
        let text: String = raw.iter().map(|(a, b, r, t)| format!("{a},{b},{r},{t}\n")).collect();
        let s = load_signed_snap(&text).unwrap();
        prop_assert_eq!(s.graph.directed().len(), raw.len());
        for (e, &(a, b, r, t)) in s.graph.directed().iter().zip(&raw) {
            prop_assert_eq!((e.source, e.target, e.rating, e.time), (a, b, r, t));
        }
        let g = s.graph.graph();
        prop_assert!(g.edges().iter().all(|&(u, v)| u < v));
        prop_assert!(g.edges().windows(2).all(|w| w[0] < w[1]));
        let outside = raw.iter().filter(|x| !(-10..=10).contains(&x.2)).count();
        prop_assert_eq!(s.warnings.iter().filter(|w| w.contains("outside")).count(), outside);
    }
}
