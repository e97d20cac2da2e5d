#pragma once

// Generated by tests/oracles/generate.py (mpmath, 40 digits); do not edit.

#include <vector>

#include "fracext/complex.hpp"

namespace oracle {

using fracext::cplx;

inline const cplx gamma_03_07i{0.30968625674374915557, -0.85678775293927057254};
inline const cplx gamma_m25_1i{-0.041736625807893613745, -0.086369107369763484694};
inline const cplx gamma_7_3{1271.4236336639088399, 0.0};
inline const cplx lgamma_04_03i__2_m1i{1.3394051868591954368, -1.1140669703569300949};
inline const cplx lgamma_25__01{0.0011779800815005227764, 0.0};
inline const cplx lgamma_05__1{1.4936482656248540508, 0.0};
inline const cplx lgamma_12__m3{-22.121690995007958807, -1.3176531113477270473};
inline const cplx ml_25__m13{0.47263476428872898809, 0.0};
inline const cplx ml_15__2i{0.19831266161222917161, 0.91920370341628415107};
inline const cplx ml_3__m50{0.0196, 0.0};
inline const cplx ml_2__m3_4i{0.11787652354484003741, 0.16972835725140866814};
inline const cplx c_sigma_03{-0.95423409761385288851, 0.0};
inline const cplx d_sigma_03{0.43913162627636976279, 0.0};
inline const cplx kappa_sigma_03{1.1424324952405280006, 0.0};
inline const cplx c_sigma_c{-0.91714546561257431642, -0.026899912398024947768};
inline const cplx d_sigma_c{0.56547078263586269133, 0.19229532492812126142};
inline const cplx kappa_sigma_c{0.25222927659106523885, 1.3554695036418384415};
inline const cplx b_03_1p02i_07{0.25173004943046183277, -0.0061484214150013442054};
inline const cplx B_03_1p02i_07{0.30142873576510574546, -0.043356592839147833354};
inline const cplx Bmh_03_1_1e6{-5.2727955481501885362e-12, 0.0};
inline const cplx b_dt2_04_09p01i_06{1.8195210796373936217, -0.27712682691034338306};
inline const cplx B_dt3_04_09p01i_06{1.8549442599830673075, 1.0232319025912466766};
inline const cplx b_dz2_04_09p01i_06{-0.63192771391877842664, 0.050261433285897016247};
inline const cplx B_dz1_04_09p01i_06{-0.33097956045573057388, -0.011806815691168631396};
inline const cplx poisson_03{0.39550200845129751352, 0.0076183458075311086126};
inline const cplx cosfrac_03{-0.059793137123132833833, -0.01960366947738101827};
inline const cplx coslog{-0.36304495940572256703, -0.12397155898273061804};
inline const cplx weyl_int_b03_1__05_at04{0.41377387143789595958, 0.0};
inline const cplx weyl_der_b05_1__07_at05{0.74204638158087777823, 0.0};
inline const cplx sobolev_b05_1__1{1.1418316262804377499, 0.0};
inline const cplx int_exp_m1p2i_15_08{0.31411942583807572054, 0.19240540462200079821};
inline const cplx int_cos_m4_15_12{0.47272118502803682072, 0.0};
inline const std::vector<cplx> heat_L3_05{cplx{0.95892386397365483547, 0.0}, cplx{1.7261149695606769845, 0.0}, cplx{1.6946827463165394787, 0.0}};
inline const std::vector<cplx> power_L8_025{cplx{1.1863437414663935713, 0.0}, cplx{-0.037528585184336957622, 0.0}, cplx{-0.67695947943503396718, 0.0}, cplx{-0.37890562087760995577, 0.0}, cplx{0.52722133583803654944, 0.0}, cplx{1.1900138698035197543, 0.0}, cplx{0.9965841698866628092, 0.0}, cplx{0.10545551404778126367, 0.0}};
inline const std::vector<cplx> power_L8_05{cplx{1.3946654549418877167, 0.0}, cplx{-0.13445739043493458314, 0.0}, cplx{-0.79054575580291083224, 0.0}, cplx{-0.50447795390567423691, 0.0}, cplx{0.3811147700343217108, 0.0}, cplx{1.0284181453449183214, 0.0}, cplx{0.83320272284765987428, 0.0}, cplx{-0.11423484596989144107, 0.0}};
inline const std::vector<cplx> power_L8_075{cplx{1.6627326251324067779, 0.0}, cplx{-0.24073826547394532814, 0.0}, cplx{-0.86297112462322550298, 0.0}, cplx{-0.57078327785803858545, 0.0}, cplx{0.30121656789663615958, 0.0}, cplx{0.93453422771469587401, 0.0}, cplx{0.73666912168768485195, 0.0}, cplx{-0.32569106605147463475, 0.0}};
inline const std::vector<cplx> power_L8_03{cplx{1.2232529590078092972, 0.0}, cplx{-0.057621607166673226266, 0.0}, cplx{-0.70421757465416706774, 0.0}, cplx{-0.4103738111188666212, 0.0}, cplx{0.49091500518619722187, 0.0}, cplx{1.1506082542838810348, 0.0}, cplx{0.95749955299885800521, 0.0}, cplx{0.059949414483410617392, 0.0}};
inline const std::vector<cplx> power_L8_c{cplx{1.285597966907463405, 0.1715296581409196961}, cplx{-0.096688801698375925658, -0.073471579915735643975}, cplx{-0.76711574271411314565, -0.083248369764802752225}, cplx{-0.48554194869886018468, -0.090199103662135091227}, cplx{0.40454093781906260797, -0.10550218239051061514}, cplx{1.0577189449514416024, -0.11819627485426287356}, cplx{0.86579777397364619813, -0.12168816698299985245}, cplx{-0.03316882480645716137, -0.17207119729482990604}};
inline const std::vector<cplx> shifted_L8_05_04{cplx{0.76282138898749213202, 0.0}, cplx{0.1620410390548488283, 0.0}, cplx{-0.25729787997017945869, 0.0}, cplx{0.06600555548332894459, 0.0}, cplx{0.89264233763031548553, 0.0}, cplx{1.4836142329838395796, 0.0}, cplx{1.3019529340227411004, 0.0}, cplx{0.51958580696583929081, 0.0}};
inline const std::vector<cplx> power_airy_05{cplx{0.0, 4.0}, cplx{1.4142135623730950488, 1.4142135623730950488}, cplx{-0.7071067811865475244, 0.7071067811865475244}, cplx{1.0, 1.0}};
inline const std::vector<cplx> power_airy_03{cplx{0.81550073728201218588, 2.5098531936871303097}, cplx{1.7820130483767357247, 0.90798099947909358312}, cplx{-0.89100652418836786236, 0.45399049973954679156}, cplx{0.42358811410127953096, 0.8313384827422856239}};
inline const std::vector<cplx> ext_L8_03_z{cplx{0.26941473336629066222, -0.076656712856188152307}, cplx{0.10124929265829186859, -0.0034848844439860602062}, cplx{-0.03418811660186747493, 0.047265239275357827468}, cplx{0.10409431355109458049, 0.023478137200396255049}, cplx{0.42982080550995653551, -0.050055975119804883497}, cplx{0.65788585709750382725, -0.10422208182875954243}, cplx{0.58062339206064844598, -0.089613352550624755147}, cplx{0.2665422010469156896, -0.024665511838048805932}};
inline const std::vector<cplx> ext_L8_c_z{cplx{0.38073045186741708474, 0.037690540428390377133}, cplx{0.11906569443302524687, 0.014854849254647330583}, cplx{-0.084342724686319013677, -0.010493576312510396443}, cplx{0.097444888494701390692, 0.012733585212439992209}, cplx{0.54216223505374131987, 0.071227325918346160206}, cplx{0.85635278062960667962, 0.11367038621833336315}, cplx{0.75417720982492321795, 0.1027598317980861137}, cplx{0.33156297085686561686, 0.051702120011632226993}};
inline const std::vector<cplx> ext_L8_03_der_z{cplx{-0.36439602384063906671, 0.13247207619470122968}, cplx{-0.018966600111426758984, -0.0053900169079346832597}, cplx{0.22590388979203332908, -0.081649297889047371599}, cplx{0.11098496005727723082, -0.050940170572268314223}, cplx{-0.2446629254624639469, 0.047258538256630134026}, cplx{-0.50675547155165608532, 0.11910537523295432924}, cplx{-0.43649758138803095313, 0.097213549638993805755}, cplx{-0.12466320628933161717, 0.0029510173683630615638}};
inline const cplx ext_scalar_025_1{0.19980502117429667895, 0.0};
inline const std::vector<cplx> rot_L8_03_025{cplx{0.52308378043045612468, 0.67830016823040769048}, cplx{-0.40084029731874160786, -0.47558732054024789163}, cplx{-0.67346202916195401994, -0.0076392124219385590852}, cplx{-0.18624014624510848121, 0.69249342780615434232}, cplx{0.03856234088402368078, -0.34548498446944442767}, cplx{0.35982218090551451666, -0.47032068202681254168}, cplx{0.5718045242718542533, 0.30053530609444367149}, cplx{-0.13039332296551628677, -0.098984969829519954917}};
inline const std::vector<cplx> rot_L8_03_05{cplx{0.50964284802942849284, 0.56266871420109488943}, cplx{-0.38047793475145711991, -0.34093893431405086296}, cplx{-0.5094038175537291906, 0.094922956804861132691}, cplx{-0.0089191025007320417505, 0.52121159958888972638}, cplx{-0.042549745087265009362, -0.23711757881312598647}, cplx{0.12777291081842843015, -0.37373932287363560504}, cplx{0.41520727889711291983, 0.056196083356838579342}, cplx{-0.10020670802160746808, -0.029268143442117222323}};

}  // namespace oracle
