#pragma once

// Embedded Gauss-Legendre and Gauss-Kronrod constants on [-1,1],
// 30 significant digits.  Generated by scripts/gen_gauss_constants.py;
// the exactness tests in tests/test_quadrules.cpp gate their validity.

namespace quadbench::detail {

inline constexpr int kGauss10Size = 10;
inline constexpr double kGauss10Nodes[10] = {
    -0.973906528517171720077964012084,
    -0.865063366688984510732096688423,
    -0.679409568299024406234327365115,
    -0.433395394129247190799265943166,
    -0.148874338981631210884826001130,
    0.148874338981631210884826001130,
    0.433395394129247190799265943166,
    0.679409568299024406234327365115,
    0.865063366688984510732096688423,
    0.973906528517171720077964012084,
};
inline constexpr double kGauss10Weights[10] = {
    0.0666713443086881375935688098933,
    0.149451349150580593145776339658,
    0.219086362515982043995534934228,
    0.269266719309996355091226921569,
    0.295524224714752870173892994651,
    0.295524224714752870173892994651,
    0.269266719309996355091226921569,
    0.219086362515982043995534934228,
    0.149451349150580593145776339658,
    0.0666713443086881375935688098933,
};

inline constexpr int kKronrod21Size = 21;
inline constexpr double kKronrod21Nodes[21] = {
    -0.995657163025808080735527280689,
    -0.973906528517171720077964012084,
    -0.930157491355708226001207180060,
    -0.865063366688984510732096688423,
    -0.780817726586416897063717578345,
    -0.679409568299024406234327365115,
    -0.562757134668604683339000099273,
    -0.433395394129247190799265943166,
    -0.294392862701460198131126603104,
    -0.148874338981631210884826001130,
    0.0,
    0.148874338981631210884826001130,
    0.294392862701460198131126603104,
    0.433395394129247190799265943166,
    0.562757134668604683339000099273,
    0.679409568299024406234327365115,
    0.780817726586416897063717578345,
    0.865063366688984510732096688423,
    0.930157491355708226001207180060,
    0.973906528517171720077964012084,
    0.995657163025808080735527280689,
};
inline constexpr double kKronrod21Weights[21] = {
    0.0116946388673718742780643960622,
    0.0325581623079647274788189724594,
    0.0547558965743519960313813002446,
    0.0750396748109199527670431409162,
    0.0931254545836976055350654650834,
    0.109387158802297641899210590326,
    0.123491976262065851077958109831,
    0.134709217311473325928054001772,
    0.142775938577060080797094273139,
    0.147739104901338491374841515972,
    0.149445554002916905664936468390,
    0.147739104901338491374841515972,
    0.142775938577060080797094273139,
    0.134709217311473325928054001772,
    0.123491976262065851077958109831,
    0.109387158802297641899210590326,
    0.0931254545836976055350654650834,
    0.0750396748109199527670431409162,
    0.0547558965743519960313813002446,
    0.0325581623079647274788189724594,
    0.0116946388673718742780643960622,
};

}  // namespace quadbench::detail
