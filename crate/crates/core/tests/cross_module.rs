use uqmn::crystal::CrystalGraph;
use uqmn::hw_maps::{psi_ab, Variant};
use uqmn::straightening::{classical_dim, ssyt_count};
use uqmn::sym::binomial;
use uqmn::{ModuleShape, Shape};

#[test]
fn crystal_graph_sizes_match_module_dimensions() {
    for (m, n) in [(2, 2), (2, 3), (3, 2)] {
        for k in 0..=m * n {
            let g = CrystalGraph::wedge(m, n, k).unwrap();
            assert_eq!(g.nodes.len(), binomial(m * n, k));
            // Edges point down, so nodes with no incoming edge are the highest ones,
            // one per summand.
            let summands = Shape::all_fitting(m, n, k).len();
            let highest = g.nodes.iter().filter(|x| !g.edges.iter().any(|e| e.to == x.id)).count();
            assert_eq!(highest, summands, "m={m} n={n} k={k}");
        }
    }
}

#[test]
fn hook_content_agrees_with_enumeration() {
    for k in 1..=6 {
        for shape in Shape::all_fitting(3, 3, k) {
            for big_n in 1..=5 {
                assert_eq!(classical_dim(&shape, big_n), ssyt_count(&shape, big_n), "{shape} N={big_n}");
            }
        }
    }
}

#[test]
fn psi_ab_degrees_and_q1_entries() {
    let map = psi_ab(2, 2, 2, 1, Variant::Generic).unwrap();
    assert_eq!(map.source, ModuleShape::new(2, 2, vec![3, 0]));
    assert_eq!(map.target, ModuleShape::new(2, 2, vec![2, 1]));
    assert!(map.check_equivariance().all_pass());
    let one = num_rational::BigRational::from_integer(1.into());
    let dumped = map.dump(Some(&one)).unwrap();
    assert!(dumped.blocks.values().all(|b| b.entries.iter().flatten().all(|e| !e.contains('q'))));
}
