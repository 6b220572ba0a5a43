//! Gauge transformations of formal deformations and the resulting
//! low-order terms.

use l1deform::deformation::{gamma_deformation, gauge_primitive, jacobi_defect};
use l1deform::cochain::alpha1;

fn main() -> l1deform::Result<()> {
    for r in 1..=2u8 {
        let beta = gauge_primitive(&alpha1(r)?, 16)?.expect("alpha1 is exact");
        println!("family {r}: primitive of alpha1 on e2..e6: {:?}", (2..=6).map(|i| beta.eval(&[i]).map(|v| v.to_string())).collect::<Result<Vec<_>, _>>()?);
        let g = gamma_deformation(r, 3)?;
        for k in 1..=3 {
            let a = g.rational_alpha(k)?;
            let vals: Vec<String> = [[1, 3], [1, 4], [2, 3]]
                .iter()
                .map(|t| Ok(format!("{t:?}->{:?}", a.value(t)?.iter().map(|(i, c)| format!("{c} e{i}")).collect::<Vec<_>>())))
                .collect::<l1deform::Result<_>>()?;
            println!("  gamma^{r}_{k}: {}", vals.join("  "));
        }
        println!("  Jacobi defect at order 3 vanishes: {}", jacobi_defect(&g, 3)?.is_zero_on(9)?);
    }
    Ok(())
}
