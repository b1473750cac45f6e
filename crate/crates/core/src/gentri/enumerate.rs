use dashmap::DashSet;
use rayon::prelude::*;

use super::{double_subdivide, GentriError};
use crate::graph::{canonical_code, graph6_decode, CanonicalCode, Graph};

/// Canonical representatives of all generalised triangles with at most
/// `n_max` vertices, one inner list per vertex count 3, 5, 7, ...
pub fn enumerate_gentri_levels(n_max: usize) -> Result<Vec<Vec<Graph>>, GentriError> {
    if n_max < 3 || n_max % 2 == 0 {
        return Err(GentriError::BadBound(n_max));
    }
    let mut levels = vec![vec![canonical(&Graph::complete(3))]];
    while levels.last().unwrap()[0].vertex_count() + 2 <= n_max {
        let seen: DashSet<CanonicalCode> = DashSet::new();
        levels.last().unwrap().par_iter().for_each(|g| {
            for (u, v) in g.edges() {
                seen.insert(canonical_code(&double_subdivide(g, u, v).unwrap()));
            }
        });
        let mut codes: Vec<CanonicalCode> = seen.into_iter().collect();
        codes.sort();
        levels.push(codes.iter().map(from_code).collect());
    }
    Ok(levels)
}

/// All levels of [`enumerate_gentri_levels`] concatenated.
pub fn enumerate_gentri(n_max: usize) -> Result<Vec<Graph>, GentriError> {
    Ok(enumerate_gentri_levels(n_max)?.into_iter().flatten().collect())
}

fn canonical(g: &Graph) -> Graph {
    from_code(&canonical_code(g))
}

fn from_code(code: &CanonicalCode) -> Graph {
    graph6_decode(std::str::from_utf8(code.as_bytes()).unwrap()).expect("codes are graph6")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gentri::is_generalised_triangle;

    #[test]
    fn small_levels() {
        let levels = enumerate_gentri_levels(9).unwrap();
        assert_eq!(levels[0].len(), 1);
        assert_eq!(levels[1].len(), 1);
        assert_eq!(
            canonical_code(&levels[1][0]),
            canonical_code(&Graph::complete_bipartite(2, 3))
        );
        let h0 = canonical_code(&crate::gentri::fixed_graphs().h0);
        assert!(levels[3].iter().any(|g| canonical_code(g) == h0));
        assert!(levels.iter().flatten().all(is_generalised_triangle));
        assert_eq!(enumerate_gentri(4), Err(GentriError::BadBound(4)));
        assert_eq!(enumerate_gentri(1), Err(GentriError::BadBound(1)));
    }
}
