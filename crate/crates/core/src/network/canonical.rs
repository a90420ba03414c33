use std::cmp::Ordering;

use super::{make_network, CirclePoint, Network, Vertex, ANGLE_EPS};

fn angle_cmp(a: &CirclePoint, b: &CirclePoint) -> Ordering {
    match (a.exact_point(), b.exact_point()) {
        (Some(p), Some(q)) => p.cmp_angle(q),
        _ if (a.angle() - b.angle()).abs() <= ANGLE_EPS => Ordering::Equal,
        _ => a.angle().total_cmp(&b.angle()),
    }
}

fn key_cmp(a: &Network, b: &Network) -> Ordering {
    a.exterior_mults()
        .cmp(&b.exterior_mults())
        .then_with(|| a.edges.cmp(&b.edges))
        .then_with(|| {
            a.vertices
                .iter()
                .zip(&b.vertices)
                .map(|(x, y)| angle_cmp(&x.position, &y.position))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
}

/// Least representative over rotations taking a vertex to angle 0 and over
/// reflection.
///
/// Ordered by exterior multiplicities, then edges, then angles. Exact
/// networks are rotated exactly, so equivalent exact inputs produce
/// identical outputs.
pub fn canonical_form(net: &Network) -> Network {
    let n = net.vertex_count();
    if n == 0 {
        return net.clone();
    }
    let mut best: Option<Network> = None;
    for reflect in [false, true] {
        let base: Vec<CirclePoint> = net
            .vertices
            .iter()
            .map(|v| {
                if reflect {
                    v.position.reflected()
                } else {
                    v.position.clone()
                }
            })
            .collect();
        for pivot in &base {
            let vertices = base
                .iter()
                .zip(&net.vertices)
                .map(|(p, v)| Vertex::new(p.rotated_to_origin(pivot), v.exterior_mult))
                .collect();
            let candidate = make_network(vertices, net.edges.clone())
                .expect("rigid motions keep a valid network valid");
            if best.as_ref().is_none_or(|b| key_cmp(&candidate, b).is_lt()) {
                best = Some(candidate);
            }
        }
    }
    best.expect("at least one vertex")
}
