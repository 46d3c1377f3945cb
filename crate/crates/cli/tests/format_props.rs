//! Round-trip properties of the file formats and validity of induced metrics.

use ghkit::{Mapping, MetricSpace, Norm};
use ghkit_cli::formats::{
    parse_mapping, parse_points, parse_space, serialize_mapping, serialize_points, serialize_space,
    PointCloud,
};
use proptest::prelude::*;

fn arb_norm() -> impl Strategy<Value = Norm> {
    prop_oneof![Just(Norm::L1), Just(Norm::L2), Just(Norm::Linf)]
}

fn arb_cloud() -> impl Strategy<Value = PointCloud> {
    (1usize..=3, 1usize..=8, arb_norm()).prop_flat_map(|(dim, n, norm)| {
        prop::collection::vec(prop::collection::vec(-1e6..1e6f64, dim..=dim), n..=n)
            .prop_map(move |points| PointCloud { norm, points })
    })
}

fn arb_space() -> impl Strategy<Value = MetricSpace<f64>> {
    arb_cloud().prop_map(|c| c.to_space())
}

fn arb_mapping() -> impl Strategy<Value = Mapping> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(n, m)| {
        prop::collection::vec(0..m, n..=n).prop_map(move |image| Mapping::new(n, m, image).unwrap())
    })
}

proptest! {
    #[test]
    fn space_files_round_trip(space in arb_space()) {
        let text = serialize_space(&space);
        prop_assert_eq!(parse_space(&text).unwrap(), space);
    }

    #[test]
    fn point_cloud_files_round_trip(cloud in arb_cloud()) {
        let text = serialize_points(&cloud);
        prop_assert_eq!(parse_points(&text).unwrap(), cloud);
    }

    #[test]
    fn mapping_files_round_trip(map in arb_mapping()) {
        let text = serialize_mapping(&map);
        prop_assert_eq!(parse_mapping(&text).unwrap(), map);
    }

    #[test]
    fn induced_matrices_are_valid_metrics(cloud in arb_cloud()) {
        // every norm yields symmetric, zero-diagonal, triangle-satisfying
        // distances up to rounding
        let space = cloud.to_space();
        prop_assert!(space.validate(1e-6).is_valid());
    }
}
