// Frozen high-precision reference values for the test suite.
// Generated by scripts/gen_reference_values.py (mpmath, 30 digits); do not
// edit numbers by hand.
#pragma once

#include <complex>

namespace refval {

// lnGamma(0.5) = ln(sqrt(pi))
inline constexpr double kLnGamma_0p5 = 0.57236494292470009;

inline constexpr double kLnGamma_1p5 = -0.12078223763524522;
// lnGamma(5.5); Gamma(5.5) = 52.34277... via half-integer recursion
inline constexpr double kLnGamma_5p5 = 3.9578139676187163;

inline constexpr double kLnGamma_12p3 = 18.238983407092242;

inline constexpr double kLnGamma_30p7 = 73.634385046769655;
// I_{1/2}(1) = sqrt(2/pi) sinh(1)
inline constexpr double kBesselI_half_1 = 0.93767488824548765;

inline constexpr double kBesselI_0_1 = 1.2660658777520083;

inline constexpr double kBesselI_0_0p3 = 1.022626879351597;

inline constexpr double kBesselI_1_2 = 1.5906368546373291;

inline constexpr double kBesselI_2_2 = 0.6889484476987382;

inline constexpr double kBesselI_4_2 = 0.050728569979180238;

inline constexpr double kBesselI_3_10 = 1758.3807166108532;

inline constexpr double kBesselI_3p7_10p5 = 2298.6258928825387;

inline constexpr double kBesselI_2_30 = 730436828561.38036;

inline constexpr double kBesselI_0_80 = 2.4751784043341705e+33;
// I_2(10+5i)
inline const std::complex<double> kBesselI_2_10p5i{307.52817672063336, -2230.5624115403885};
// I_{3/2}(3-2i)
inline const std::complex<double> kBesselI_1p5_3m2i{-1.0905722640179876, -3.120398323756305};
// I_2(2)/I_1(2): n=2, |k|=1, |z|=hbar=1
inline constexpr double kBesselRatio_I2_I1_at2 = 0.43312742672231176;
// I_4(2)/I_1(2): n=2, |k|=3, |z|=hbar=1
inline constexpr double kBesselRatio_I4_I1_at2 = 0.031891987056182308;
// K_{1/2}(1) = sqrt(pi/2) e^{-1}
inline constexpr double kBesselK_half_1 = 0.46106850444789456;

inline constexpr double kBesselK_0_5 = 0.0036910983340425943;

inline constexpr double kBesselK_0_2 = 0.11389387274953344;

inline constexpr double kBesselK_0p5_2 = 0.11993777196806145;

inline constexpr double kBesselK_2_0p7 = 3.6613299608091528;

inline constexpr double kBesselK_3p7_4p2 = 0.036896280760542727;

inline constexpr double kBesselK_1_10 = 1.8648773453825585e-5;
// e^40 K_0(40)
inline constexpr double kBesselKScaled_0_40 = 0.19755558495729817;
// g_1(1)
inline const std::complex<double> kG_1_1{3.731474191616458, 0.0};

inline const std::complex<double> kG_1_4{119.51222689292024, 0.0};

inline const std::complex<double> kG_1_10{72272.022908885379, 0.0};

inline const std::complex<double> kG_0p5_1{3.2863951540388741, 0.0};

inline const std::complex<double> kG_0p5_7p3{3157.5269664157957, 0.0};

inline const std::complex<double> kG_2_2p5{28.698854823693906, 0.0};
// g_1(5+2i)
inline const std::complex<double> kG_1_5p2i{-205.60142774439453, 303.83291290063479};
// g_1(40), asymptotic regime
inline const std::complex<double> kG_1_40{1.50267125400233e+18, 0.0};
// m-profile Taylor coeff b_0 at a=1
inline constexpr double kMCoeff_a1_b0 = 1.0;

inline constexpr double kMCoeff_a1_b2 = -0.25;

inline constexpr double kMCoeff_a1_b4 = -0.072916666666666667;

inline constexpr double kMCoeff_a1_b6 = -0.0390625;

inline constexpr double kMCoeff_a1_b8 = -0.025618489583333333;
// m-profile Taylor coeff b_0 at a=0.5
inline constexpr double kMCoeff_a0p5_b0 = 1.0;

inline constexpr double kMCoeff_a0p5_b2 = -1.25;

inline constexpr double kMCoeff_a0p5_b4 = 0.17708333333333333;

inline constexpr double kMCoeff_a0p5_b6 = 0.033854166666666667;

inline constexpr double kMCoeff_a0p5_b8 = 0.013444010416666667;
// m-profile Taylor coeff b_0 at a=2
inline constexpr double kMCoeff_a2_b0 = 1.0;

inline constexpr double kMCoeff_a2_b2 = 0.25;

inline constexpr double kMCoeff_a2_b4 = 0.17708333333333333;

inline constexpr double kMCoeff_a2_b6 = 0.14322916666666667;

inline constexpr double kMCoeff_a2_b8 = 0.12281901041666667;
// d_r = Gamma(r+1/2)/2
inline constexpr double kDCoeff_0 = 0.88622692545275801;

inline constexpr double kDCoeff_1 = 0.44311346272637901;

inline constexpr double kDCoeff_2 = 0.66467019408956851;

inline constexpr double kDCoeff_3 = 1.6616754852239213;

inline constexpr double kDCoeff_4 = 5.8158641982837245;

inline constexpr double kDCoeff_5 = 26.17138889227676;

inline constexpr double kDCoeff_6 = 143.94263890752218;
// T_{2,0}(u1,u1), hbar=1: Gamma(2) (1)^{-1/2} I_1(2) = I_1(2)
inline constexpr double kKernelT_n2p0_uu_h1 = 1.5906368546373291;
// T_{2,-1}(z,w) at z.w = 0.3+0.31i, hbar=0.7
inline const std::complex<double> kKernelT_n2pm1_0p3i_h0p7{1.5907829391907563, 0.83895341579355397};
// T_{3,0.5} at z.w = 1.2-0.4i, hbar=0.5
inline const std::complex<double> kKernelT_n3p0p5_1p2_h0p5{3.1765086130583988, -1.2034034877509891};
// measure density, n=2, p=0, |z|=0.8, hbar=1
inline constexpr double kMeasure_n2p0_r0p8_h1 = 0.038087595881469535;
// measure density, n=2, p=-1, |z|=0.6, hbar=0.5
inline constexpr double kMeasure_n2pm1_r0p6_h0p5 = 0.22621599367742587;
// int t^3 K_0(t) dt = 2^2 Gamma(2)^2
inline constexpr double kKMoment_mu4_nu0 = 4.0;

inline constexpr double kKMoment_mu6_num1 = 70.685834705770348;

inline constexpr double kKMoment_mu5p5_nu0p5 = 30.079539295572006;

}  // namespace refval
