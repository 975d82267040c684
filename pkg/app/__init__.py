"""Goal-space perturbation lab: HER and HAC on kinematic tasks under transformed goal spaces."""
