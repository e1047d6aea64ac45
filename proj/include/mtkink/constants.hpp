#pragma once

namespace mtk {

// Physical constants, SI. CODATA 2018 values; every operation takes these
// through a PhysicalConstants value so a parameter file can override them
// (constants_override) without recompiling.
struct PhysicalConstants {
    double hbar = 1.054571817e-34;      // J s
    double k_B = 1.380649e-23;          // J/K (exact)
    double e_charge = 1.602176634e-19;  // C (exact)
    double eps0 = 8.8541878128e-12;     // F/m
    double c_light = 2.99792458e8;      // m/s (exact)

    // One Debye in C m. Pinned conversion constant: debye_to_si multiplies by
    // exactly this value, si_to_debye divides by it.
    double debye = 3.33564e-30;

    double electron_volt = 1.602176634e-19;  // J
};

// Decoherence / transport timescales the toolkit compares its outputs against.
// All seconds. Ranges are [low, high] order-of-magnitude brackets.
struct ReferenceTimescales {
    double frohlich_low = 1e-12;   // coherent phonon condensate estimates
    double frohlich_high = 1e-11;
    double tegmark_low = 1e-20;    // environmental decoherence bounds
    double tegmark_high = 1e-13;
    double algae_transport = 4e-13;  // 400 fs excitation transport at 277 K
    double transfer_time = 5e-7;     // kink transit over ~0.5 mm at sound speed
    double cavity_Tr = 1e-4;         // cavity quanta lifetime used downstream
};

} // namespace mtk
