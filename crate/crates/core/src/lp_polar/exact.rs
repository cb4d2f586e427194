//! Closed-form route for `p = ∞` and polytopes in dimensions 1–3.
//!
//! For `p = ∞`, `e^{−h_{K−x}}` integrates along rays in closed form, and the
//! moments of `e^{−h}` are moments of the classical polar body:
//! `∫ e^{−h} = n! |P|`, `∫ y e^{−h} = (n+1)! ∫_P y`,
//! `∫ y yᵀ e^{−h} = (n+2)! ∫_P y yᵀ`, where
//! `P = (K−x)° = conv{ n_f / (d_f − ⟨n_f, x⟩) }` over the facets of `K`.

use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Facet};
use crate::Vector;

/// The classical polar of `K − x`, or `None` when `K` has no facet structure
/// (not a polytope, or dimension above 3).
pub fn polar_polytope(body: &ConvexBody, x: &Vector) -> Result<Option<ConvexBody>> {
    let Some(poly) = body.as_polytope() else {
        return Ok(None);
    };
    let facets: &[Facet] = poly.facets();
    if facets.is_empty() {
        return Ok(None);
    }
    let mut pts = Vec::with_capacity(facets.len());
    for f in facets {
        let gap = f.offset - f.normal.dot(x);
        if !(gap > 0.0) {
            return Err(Error::NonIntegrable(
                "translation point is not interior, the polar body is unbounded".into(),
            ));
        }
        pts.push(&f.normal / gap);
    }
    Ok(Some(ConvexBody::polytope(&pts)?))
}
