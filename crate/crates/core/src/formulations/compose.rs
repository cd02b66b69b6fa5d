use super::{FormulationError, LinearSystem, Row};
use crate::graph::{Graph, GraphError};
use crate::Rational;

/// A component system with the host edge index of each of its original
/// variables.
#[derive(Debug, Clone)]
pub struct SystemPart<'a> {
    pub system: &'a LinearSystem,
    pub edge_map: &'a [usize],
}

/// Cartesian product of component systems whose edge sets partition the
/// host's `host_m` edges. Auxiliary tags of part `k` become `p<k>:<tag>`.
pub fn product_compose(parts: &[SystemPart<'_>], host_m: usize) -> Result<LinearSystem, FormulationError> {
    let mut owner = vec![None; host_m];
    for (k, part) in parts.iter().enumerate() {
        if part.edge_map.len() != part.system.num_orig {
            return Err(FormulationError::NotPartition(format!(
                "part {k} maps {} edges but has {} original variables",
                part.edge_map.len(),
                part.system.num_orig
            )));
        }
        for &e in part.edge_map {
            if e >= host_m {
                return Err(FormulationError::NotPartition(format!("part {k} maps to edge {e} >= {host_m}")));
            }
            if let Some(other) = owner[e].replace(k) {
                return Err(FormulationError::NotPartition(format!("edge {e} claimed by parts {other} and {k}")));
            }
        }
    }
    if let Some(e) = owner.iter().position(|o| o.is_none()) {
        return Err(FormulationError::NotPartition(format!("edge {e} belongs to no part")));
    }
    let mut sys = LinearSystem::new(host_m);
    for (k, part) in parts.iter().enumerate() {
        sys.absorb(part.system, part.edge_map, |t| format!("p{k}:{t}"));
    }
    Ok(sys)
}

/// Add `Σ x_e = |V(G)| - 1`.
pub fn stp_from_fp(sys: &LinearSystem, g: &Graph) -> Result<LinearSystem, FormulationError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let mut out = sys.clone();
    out.add_equality(Row::new(
        (0..g.m()).map(|e| (e, Rational::one())),
        Rational::from(g.n() - 1),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::formulations::edmonds_system;
    use crate::graph::{blocks, EnumerationCaps};

    fn edmonds(g: &Graph) -> LinearSystem {
        edmonds_system(g, true, true, EnumerationCaps::default()).unwrap()
    }

    fn block_product(g: &Graph) -> LinearSystem {
        let bs = blocks(g);
        let systems: Vec<LinearSystem> = bs.iter().map(|b| edmonds(&b.graph)).collect();
        let parts: Vec<SystemPart> = bs
            .iter()
            .zip(&systems)
            .map(|(b, s)| SystemPart {
                system: s,
                edge_map: &b.edges,
            })
            .collect();
        product_compose(&parts, g.m()).unwrap()
    }

    #[test]
    fn block_products() {
        assert_eq!(block_product(&fixtures::path(3)).size(), 4);
        assert_eq!(block_product(&fixtures::bowtie()).size(), 14);
        let k3 = fixtures::complete(3);
        assert_eq!(block_product(&k3), edmonds(&k3));
    }

    #[test]
    fn partition_is_checked() {
        let k2 = edmonds(&fixtures::path(2));
        let twice = [
            SystemPart { system: &k2, edge_map: &[0] },
            SystemPart { system: &k2, edge_map: &[0] },
        ];
        assert!(matches!(product_compose(&twice, 2), Err(FormulationError::NotPartition(_))));
        let short = [SystemPart { system: &k2, edge_map: &[0] }];
        assert!(product_compose(&short, 2).is_err());
    }

    #[test]
    fn spanning_tree_row() {
        let k3 = fixtures::complete(3);
        let s = stp_from_fp(&edmonds(&k3), &k3).unwrap();
        assert_eq!(s.size(), 7);
        assert_eq!(s.equalities.len(), 1);
        let k2 = fixtures::path(2);
        let s = stp_from_fp(&edmonds(&k2), &k2).unwrap();
        assert_eq!(s.equalities[0], Row::new([(0, Rational::one())], Rational::one()));
        let two = Graph::simple(2, &[]).unwrap();
        assert!(stp_from_fp(&edmonds(&two), &two).is_err());
    }
}
