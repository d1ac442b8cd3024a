use motzkin_core::graph::Graph;
use motzkin_core::msform::QuadForm;
use motzkin_core::sos::{assemble_level, hierarchy_options};
use motzkin_core::sdp;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let name = args.get(1).map(String::as_str).unwrap_or("P3");
    let r: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(4);
    let g = match name {
        "P3" => Graph::path(3),
        "P4" => Graph::path(4),
        "P5" => Graph::path(5),
        "P6" => Graph::path(6),
        "C4" => Graph::cycle(4),
        "C5" => Graph::cycle(5),
        "C6" => Graph::cycle(6),
        "paw" => Graph::from_edges(4, &[(1, 2), (2, 3), (1, 3), (3, 4)]).unwrap(),
        "bull" => Graph::from_edges(5, &[(1, 2), (2, 3), (1, 3), (1, 4), (2, 5)]).unwrap(),
        "star4" => Graph::from_edges(5, &[(1, 2), (1, 3), (1, 4), (1, 5)]).unwrap(),
        "empty2" => Graph::empty(2),
        _ => panic!("unknown graph {name}"),
    };
    let qf = QuadForm::ms_matrix(&g);
    let inst = assemble_level(&qf, r).unwrap();
    eprintln!(
        "{} r={}: blocks {:?}, {} constraints, {} free",
        name,
        r,
        inst.block_dims,
        inst.n_constraints(),
        inst.free_dim
    );
    let sol = sdp::solve(&inst, &hierarchy_options()).unwrap();
    eprintln!(
        "status {:?} value {:.9} gap {:.3e} pinf {:.3e} dinf {:.3e} iters {}",
        sol.status,
        sol.free_values[0],
        sol.rel_gap,
        sol.primal_residual,
        sol.dual_residual,
        sol.iterations
    );
}
