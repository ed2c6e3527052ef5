mod common;

use proptest::prelude::*;

use cga::cluster::{
    edges_to_set, event_report, is_externally_sparse, is_internally_dense, sparse_core, ClusterSpec, EdgeMode,
};
use cga::fraction::Fraction;
use cga::generator::{edge_probability, sample_graph};
use cga::graph::Graph;
use cga::tree::{pair_height, pairs_at_height, set_height, TreeParams, VertexSet};

fn tree() -> impl Strategy<Value = TreeParams> {
    (2usize..=4, 1u32..=4, 1.1f64..4.0)
        .prop_filter("n <= 256", |(b, h, _)| b.pow(*h) <= 256)
        .prop_map(|(b, h, c)| TreeParams::new(b, h, c).unwrap())
}

/// A sampled graph plus a nonempty vertex set drawn inside a random
/// subtree, so that sets of every height turn up.
fn graph_and_set() -> impl Strategy<Value = (Graph, VertexSet)> {
    (tree(), any::<u64>(), any::<bool>(), 0u32..=4, proptest::collection::vec(any::<usize>(), 1..8)).prop_map(
        |(p, seed, directed, h, picks)| {
            let h = h.min(p.height());
            let width = p.pow(h);
            let base = (picks[0] % p.block_count(h)) * width;
            let members = picks.iter().map(|x| base + x % width).collect();
            let m = VertexSet::new(members, &p).unwrap();
            (sample_graph(&p, seed, directed).unwrap(), m)
        },
    )
}

fn fraction() -> impl Strategy<Value = Fraction> {
    (1u64..=20).prop_flat_map(|den| (1..=den).prop_map(move |num| Fraction::new(num, den).unwrap()))
}

fn mode() -> impl Strategy<Value = EdgeMode> {
    prop_oneof![Just(EdgeMode::Undirected), Just(EdgeMode::DirectedOut)]
}

proptest! {
    #[test]
    fn pair_height_is_a_symmetric_ultrametric(p in tree(), u in any::<usize>(), v in any::<usize>(), w in any::<usize>()) {
        let (u, v, w) = (u % p.n(), v % p.n(), w % p.n());
        prop_assert!(pair_height(u, u, &p).is_err());
        prop_assume!(u != v && v != w && u != w);
        let h = |a, b| pair_height(a, b, &p).unwrap();
        prop_assert_eq!(h(u, v), h(v, u));
        prop_assert!(h(u, v) >= 1);
        prop_assert!(h(u, w) <= h(u, v).max(h(v, w)));
        prop_assert_eq!(h(u, v), common::pair_height(u, v, p.b()));
    }

    #[test]
    fn edge_probability_follows_height(p in tree(), u in any::<usize>(), v in any::<usize>()) {
        let (u, v) = (u % p.n(), v % p.n());
        prop_assume!(u != v);
        let q = edge_probability(u, v, &p).unwrap();
        prop_assert_eq!(q, edge_probability(v, u, &p).unwrap());
        let expected = p.c().powi(-(common::pair_height(u, v, p.b()) as i32));
        prop_assert!((q - expected).abs() <= 1e-15 * expected.max(1e-300));
    }

    #[test]
    fn set_height_and_span((g, m) in graph_and_set()) {
        let p = g.params();
        prop_assert_eq!(m.height(), common::set_height(m.members(), p.b()));
        prop_assert_eq!(set_height(m.members(), p).unwrap(), m.height());
        for u in 0..p.n() {
            prop_assert_eq!(m.contains(u), m.members().contains(&u));
            let inside = common::pair_height(u, m.members()[0], p.b()) <= m.height();
            prop_assert_eq!(m.span().contains(&u), inside);
        }
        prop_assert_eq!(m.is_complete(), m.len() == p.pow(m.height()));
    }

    #[test]
    fn counting_identity(b in 2usize..=6, h in 0u32..=5) {
        let p = TreeParams::new(b, 5, 2.0).unwrap();
        let k = b.pow(h) as u128;
        let sum: u128 = (1..=h).map(|j| pairs_at_height(j, h, &p).unwrap()).sum();
        prop_assert_eq!(sum, k * k.saturating_sub(1) / 2);
    }

    #[test]
    fn fraction_round_trips(f in fraction()) {
        let back: Fraction = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn fraction_comparisons_are_exact(f in fraction(), count in 0usize..50, size in 1usize..50) {
        let lhs = count as u128 * f.denom() as u128;
        let rhs = f.numer() as u128 * size as u128;
        prop_assert_eq!(f.count_reaches(count, size), lhs >= rhs);
        prop_assert_eq!(f.count_within(count, size), lhs <= rhs);
    }

    #[test]
    fn edges_to_set_matches_matrix((g, m) in graph_and_set(), mode in mode()) {
        let adj = common::adjacency(&g, mode);
        for v in 0..g.n() {
            let expected = m.members().iter().filter(|&&w| adj[v][w]).count();
            prop_assert_eq!(edges_to_set(v, &m, &g, mode), expected);
        }
    }

    #[test]
    fn density_is_monotone_in_beta((g, m) in graph_and_set(), a in fraction(), b in fraction()) {
        let (lo, hi) = if a.to_f64() <= b.to_f64() { (a, b) } else { (b, a) };
        let mode = EdgeMode::for_graph(&g);
        let strict = ClusterSpec::new(Fraction::new(1, 2).unwrap(), hi, mode).unwrap();
        let loose = ClusterSpec::new(Fraction::new(1, 2).unwrap(), lo, mode).unwrap();
        prop_assert!(!is_internally_dense(&m, &g, &strict) || is_internally_dense(&m, &g, &loose));
    }

    #[test]
    fn sparseness_is_monotone_in_alpha((g, m) in graph_and_set(), a in fraction(), b in fraction()) {
        let (lo, hi) = if a.to_f64() <= b.to_f64() { (a, b) } else { (b, a) };
        let mode = EdgeMode::for_graph(&g);
        let strict = ClusterSpec::new(lo, Fraction::new(1, 2).unwrap(), mode).unwrap();
        let loose = ClusterSpec::new(hi, Fraction::new(1, 2).unwrap(), mode).unwrap();
        prop_assert!(!is_externally_sparse(&m, &g, &strict) || is_externally_sparse(&m, &g, &loose));
    }

    #[test]
    fn sparse_core_grows_with_fraction((g, m) in graph_and_set(), x in 0.0f64..1.0, y in 0.0f64..1.0) {
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        let mode = EdgeMode::for_graph(&g);
        let small = sparse_core(&m, &g, mode, lo);
        let large = sparse_core(&m, &g, mode, hi);
        prop_assert!(small.iter().all(|v| large.contains(v)));
        prop_assert!(large.iter().all(|v| m.contains(*v)));
    }

    #[test]
    fn events_decompose_sparseness((g, m) in graph_and_set(), alpha in fraction(), mode in mode(), extra in 0u32..5) {
        let p = g.params();
        let s = ClusterSpec::new(alpha, Fraction::new(1, 2).unwrap(), mode).unwrap();
        let h_star = (m.height() + extra).min(p.height());
        let r = event_report(&m, &g, &s, h_star).unwrap();
        prop_assert_eq!(r.is_externally_sparse(), is_externally_sparse(&m, &g, &s));
        prop_assert_eq!(r.dense, is_internally_dense(&m, &g, &s));
        let adj = common::adjacency(&g, mode);
        let a = (alpha.numer(), alpha.denom());
        prop_assert_eq!((r.e1, r.e2, r.e3), common::events(&adj, m.members(), a, p.b(), h_star));
    }

    #[test]
    fn witnesses_are_least_violators((g, m) in graph_and_set(), alpha in fraction(), beta in fraction()) {
        let p = g.params();
        let mode = EdgeMode::for_graph(&g);
        let s = ClusterSpec::new(alpha, beta, mode).unwrap();
        let r = event_report(&m, &g, &s, p.height()).unwrap();
        let k = m.len();
        let sparse_fail = |u: usize| !m.contains(u) && !alpha.count_within(edges_to_set(u, &m, &g, mode), k);
        let dense_fail = |v: usize| m.contains(v) && !beta.count_reaches(edges_to_set(v, &m, &g, mode), k);
        let expected_dense = (0..p.n()).find(|&v| dense_fail(v));
        prop_assert_eq!(r.dense_witness.map(|w| w.vertex), expected_dense);
        if let Some(w) = r.dense_witness {
            prop_assert_eq!(w.edges, edges_to_set(w.vertex, &m, &g, mode));
        }
        let inner = m.span();
        let expected_e1 = inner.clone().find(|&u| sparse_fail(u));
        let expected_e2 = (0..p.n()).filter(|u| !inner.contains(u)).find(|&u| sparse_fail(u));
        prop_assert_eq!(r.e1_witness.map(|w| w.vertex), expected_e1);
        prop_assert_eq!(r.e2_witness.map(|w| w.vertex), expected_e2);
        prop_assert!(r.e3_witness.is_none());
    }

    #[test]
    fn undirected_view_of_directed_graph(p in tree(), seed in any::<u64>(), picks in proptest::collection::vec(any::<usize>(), 1..6)) {
        let g = sample_graph(&p, seed, true).unwrap();
        let m = VertexSet::new(picks.iter().map(|x| x % p.n()).collect(), &p).unwrap();
        for v in 0..p.n() {
            let union = m.members().iter().filter(|&&w| w != v && (g.has_edge(v, w) || g.has_edge(w, v))).count();
            let out = m.members().iter().filter(|&&w| g.has_edge(v, w)).count();
            prop_assert_eq!(edges_to_set(v, &m, &g, EdgeMode::Undirected), union);
            prop_assert_eq!(edges_to_set(v, &m, &g, EdgeMode::DirectedOut), out);
        }
    }

    #[test]
    fn edge_list_round_trip(p in tree(), seed in any::<u64>(), directed in any::<bool>()) {
        let g = sample_graph(&p, seed, directed).unwrap();
        let text = g.to_edge_list_string();
        let back = Graph::parse_edge_list(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_edge_list_string(), text);
    }

    #[test]
    fn sampling_is_deterministic(p in tree(), seed in any::<u64>(), directed in any::<bool>()) {
        prop_assert_eq!(sample_graph(&p, seed, directed).unwrap(), sample_graph(&p, seed, directed).unwrap());
    }
}
