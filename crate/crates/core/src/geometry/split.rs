use super::body::ConvexBody;
use super::Direction;
use crate::error::{Error, Result};
use crate::Vector;
use std::f64::consts::PI;

/// Volumes of `K ∩ {⟨x,u⟩ ≥ 0}` and `K ∩ {⟨x,u⟩ ≤ 0}`.
pub fn halfspace_split_volume(body: &ConvexBody, u: &Direction) -> Result<(f64, f64)> {
    split_volume(body, u.as_vector(), 0.0)
}

/// Volumes of `K ∩ {⟨x,w⟩ ≥ beta}` and `K ∩ {⟨x,w⟩ ≤ beta}`.
pub fn split_volume(body: &ConvexBody, w: &Vector, beta: f64) -> Result<(f64, f64)> {
    match body {
        ConvexBody::VPolytope(p) => {
            let (mut plus, mut minus) = (0.0, 0.0);
            for s in p.simplices()? {
                let vs = s.vertices();
                let sd: Vec<f64> = vs.iter().map(|v| v.dot(w) - beta).collect();
                if sd.iter().all(|&d| d >= 0.0) {
                    plus += s.volume();
                    continue;
                }
                if sd.iter().all(|&d| d <= 0.0) {
                    minus += s.volume();
                    continue;
                }
                let mut pts: Vec<Vector> = Vec::new();
                for i in 0..vs.len() {
                    if sd[i] >= 0.0 {
                        pts.push(vs[i].clone());
                    }
                    for j in 0..vs.len() {
                        if sd[i] > 0.0 && sd[j] < 0.0 {
                            let t = sd[i] / (sd[i] - sd[j]);
                            pts.push(&vs[i] + (&vs[j] - &vs[i]) * t);
                        }
                    }
                }
                let part = match ConvexBody::polytope(&pts) {
                    Ok(piece) => piece.volume()?.min(s.volume()),
                    Err(Error::DegenerateBody(_)) => 0.0,
                    Err(e) => return Err(e),
                };
                plus += part;
                minus += s.volume() - part;
            }
            Ok((plus, minus))
        }
        ConvexBody::Ball(b) => {
            let n = b.center.len();
            let wn = w.norm();
            let r = b.radius;
            let vol = body.volume()?;
            let d = (b.center.dot(w) - beta) / wn;
            let minus = if d >= r {
                0.0
            } else if d <= -r {
                vol
            } else {
                let h = r - d;
                match n {
                    1 => h,
                    2 => r * r * ((r - h) / r).clamp(-1.0, 1.0).acos() - (r - h) * (2.0 * r * h - h * h).max(0.0).sqrt(),
                    3 => PI * h * h * (3.0 * r - h) / 3.0,
                    _ => {
                        return Err(Error::UnsupportedDimension {
                            dim: n,
                            reason: "ball cap volumes are implemented up to dimension 3".into(),
                        })
                    }
                }
            };
            Ok((vol - minus, minus))
        }
        ConvexBody::AffineImage(a) => {
            let w_base = a.matrix().transpose() * w;
            let (p, m) = split_volume(a.base(), &w_base, beta - a.shift().dot(w))?;
            Ok((p * a.det().abs(), m * a.det().abs()))
        }
    }
}
