use motzkin_core::graph::Graph;
use motzkin_core::msform::QuadForm;
use motzkin_core::sos::sweep_levels;

fn main() {
    let star4 = Graph::from_edges(5, &[(1, 2), (1, 3), (1, 4), (1, 5)]).unwrap();
    let paw = Graph::from_edges(4, &[(1, 2), (2, 3), (1, 3), (3, 4)]).unwrap();
    let bull = Graph::from_edges(5, &[(1, 2), (2, 3), (1, 3), (1, 4), (2, 5)]).unwrap();
    let mut graphs: Vec<(String, Graph)> = vec![
        ("C4".into(), Graph::cycle(4)),
        ("C5".into(), Graph::cycle(5)),
        ("C6".into(), Graph::cycle(6)),
        ("P3".into(), Graph::path(3)),
        ("P4".into(), Graph::path(4)),
        ("P5".into(), Graph::path(5)),
        ("P6".into(), Graph::path(6)),
        ("star4".into(), star4),
        ("paw".into(), paw),
        ("bull".into(), bull),
        ("empty2".into(), Graph::empty(2)),
        ("empty3".into(), Graph::empty(3)),
    ];
    for n in 1..=6 {
        graphs.push((format!("K{n}"), Graph::complete(n)));
    }
    for (name, g) in graphs {
        let qf = QuadForm::ms_matrix(&g);
        let levels = sweep_levels(&qf, 5).unwrap();
        let row: Vec<String> = levels
            .iter()
            .map(|l| format!("r{}={:?}({:.6})", l.r, l.status, l.value))
            .collect();
        println!("{name:7} {}", row.join("  "));
    }
}
