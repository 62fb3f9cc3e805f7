use ldpart::format::{decode_graph6, encode_graph6, parse_graphs, parse_graph6_stream, write_graph, Format, ParseError};
use ldpart::Graph;

#[test]
fn graph6_samples_decode_to_listed_edges() {
    let text = include_str!("data/g6_samples.txt");
    for line in text.lines() {
        let mut cols = line.split('\t');
        let code = cols.next().unwrap();
        let n: usize = cols.next().unwrap().parse().unwrap();
        let edges: Vec<(usize, usize)> = cols
            .next()
            .unwrap_or("")
            .split_whitespace()
            .map(|e| {
                let (u, v) = e.split_once('-').unwrap();
                (u.parse().unwrap(), v.parse().unwrap())
            })
            .collect();
        let g = decode_graph6(code).unwrap();
        assert_eq!(g, Graph::from_edges(n, edges).unwrap(), "{code}");
        assert_eq!(encode_graph6(&g), code);
    }
}

#[test]
fn atlas_counts_by_order() {
    let graphs = parse_graph6_stream(include_str!("data/atlas_upto7.g6")).unwrap();
    let mut by_n = [0usize; 8];
    for g in &graphs {
        by_n[g.n()] += 1;
    }
    // numbers of unlabelled graphs on 1..=7 vertices
    assert_eq!(&by_n[1..], &[1, 2, 4, 11, 34, 156, 1044]);
}

#[test]
fn every_format_round_trips() {
    let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (2, 5), (0, 5)]).unwrap();
    for f in [Format::Edgelist, Format::Graph6, Format::Json] {
        let text = write_graph(&g, f);
        assert_eq!(parse_graphs(&text, Some(f)).unwrap(), vec![g.clone()]);
        assert_eq!(parse_graphs(&text, None).unwrap(), vec![g.clone()], "{f:?} detection");
    }
}

#[test]
fn errors_name_the_line() {
    let err = parse_graphs("# comment\n3 2\n0 1\n1 7\n", Some(Format::Edgelist)).unwrap_err();
    assert!(matches!(err, ParseError::Graph { line: 4, .. }), "{err}");
    let err = parse_graphs("3 2\n0 1\n", Some(Format::Edgelist)).unwrap_err();
    assert!(err.to_string().contains("line"), "{err}");
    assert!(matches!(parse_graphs("", None), Err(ParseError::Empty)));
}
