mod common;

use geonet_core::format::{
    network_from_str, network_to_string, network_to_value, read_network, write_network, FormatError,
};
use geonet_core::network::{make_network, CirclePoint, InteriorEdge, Network, Vertex};
use rand::Rng;

fn corpus() -> Vec<Network> {
    let mut rng = common::rng_for(40);
    let mut nets = vec![Network::line(1), common::kite(Some(4))];
    for n in 3..=6 {
        nets.extend(common::random_admissible(&mut rng, n, 40));
    }
    for _ in 0..30 {
        let n = rng.random_range(1..=6);
        let vertices: Vec<Vertex> = (0..n)
            .map(|k| {
                let angle =
                    std::f64::consts::TAU * (k as f64 + rng.random_range(0.0..0.9)) / n as f64;
                Vertex::new(CirclePoint::from_angle(angle), rng.random_range(1..=9))
            })
            .collect();
        let edges = (1..n)
            .map(|k| InteriorEdge::new(0, k, rng.random_range(1..=9)))
            .collect();
        nets.push(make_network(vertices, edges).unwrap());
    }
    nets
}

#[test]
fn string_round_trip() {
    for net in corpus() {
        let text = network_to_string(&net);
        assert_eq!(network_from_str(&text).unwrap(), net);
        assert_eq!(
            serde_json::from_str::<serde_json::Value>(&text).unwrap(),
            network_to_value(&net)
        );
    }
}

#[test]
fn file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (k, net) in corpus().iter().enumerate() {
        let path = dir.path().join(format!("net{k}.json"));
        write_network(net, &path).unwrap();
        assert_eq!(&read_network(&path).unwrap(), net);
    }
}

#[test]
fn large_rationals_round_trip_exactly() {
    let mut p = common::random_point(&mut common::rng_for(41), 9);
    for _ in 0..6 {
        p = p
            .square()
            .mul(&common::random_point(&mut common::rng_for(42), 97));
    }
    assert!(p.height_bits() > 64);
    let net = make_network(
        vec![Vertex::new(CirclePoint::exact(p.clone()), 1)],
        Vec::new(),
    )
    .unwrap();
    let back = network_from_str(&network_to_string(&net)).unwrap();
    assert_eq!(back.vertices()[0].position.exact_point(), Some(&p));
}

#[test]
fn vertices_are_sorted_and_edges_renumbered() {
    let text = r#"{"version": "geonet/1",
      "vertices": [{"angle": 3.141592653589793, "tan_half": "inf", "m": 1},
                   {"angle": 0.0, "tan_half": [0, 1], "m": 1}],
      "edges": [{"i": 1, "j": 0, "m": 1}]}"#;
    assert_eq!(network_from_str(text).unwrap(), Network::line(1));
}

#[test]
fn rejections() {
    let ok = network_to_string(&Network::line(1));
    assert!(matches!(
        network_from_str(&ok.replace("geonet/1", "geonet/999")),
        Err(FormatError::Version(_))
    ));
    assert!(matches!(
        network_from_str(&ok.replace("\"edges\"", "\"edgez\"")),
        Err(FormatError::Parse { .. })
    ));
    assert!(matches!(
        network_from_str(&ok.replace("\"m\": 1", "\"m\": 0")),
        Err(FormatError::Network(_))
    ));
    assert!(matches!(
        network_from_str(&ok.replace("\"m\": 1", "\"m\": -1")),
        Err(FormatError::Parse { .. })
    ));
    assert!(matches!(
        network_from_str("[1, 2"),
        Err(FormatError::Parse { line: 1, .. })
    ));
    let no_version = r#"{"vertices": [], "edges": []}"#;
    assert!(matches!(
        network_from_str(no_version),
        Err(FormatError::Parse { .. })
    ));
    let dir = tempfile::tempdir().unwrap();
    assert!(matches!(
        read_network(dir.path().join("missing.json")),
        Err(FormatError::Io { .. })
    ));
}
