//! Every runnable example also runs as a test.

macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(generate_graph, "generate_graph.rs");
example!(verify_cluster, "verify_cluster.rs");
example!(brute_force_oracle, "brute_force_oracle.rs");
example!(bounds_table, "bounds_table.rs");
example!(threshold_sweep, "threshold_sweep.rs");
example!(event_probabilities, "event_probabilities.rs");
example!(sparse_trend, "sparse_trend.rs");
example!(internal_edges, "internal_edges.rs");
example!(cli_session, "cli_session.rs");
