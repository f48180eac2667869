#include "hsbem/quadrature.hpp"

namespace hsbem {

namespace {

constexpr GaussPoint g4[] = {
    {-0.86113631159405257522, 0.34785484513745385737},
    {-0.3399810435848562648, 0.65214515486254614263},
    {0.3399810435848562648, 0.65214515486254614263},
    {0.86113631159405257522, 0.34785484513745385737},
};

constexpr GaussPoint g6[] = {
    {-0.93246951420315202781, 0.17132449237917034504},
    {-0.66120938646626451366, 0.36076157304813860757},
    {-0.23861918608319690863, 0.46791393457269104739},
    {0.23861918608319690863, 0.46791393457269104739},
    {0.66120938646626451366, 0.36076157304813860757},
    {0.93246951420315202781, 0.17132449237917034504},
};

constexpr GaussPoint g8[] = {
    {-0.96028985649753623168, 0.10122853629037625915},
    {-0.79666647741362673959, 0.22238103445337447054},
    {-0.52553240991632898582, 0.31370664587788728734},
    {-0.18343464249564980494, 0.36268378337836198297},
    {0.18343464249564980494, 0.36268378337836198297},
    {0.52553240991632898582, 0.31370664587788728734},
    {0.79666647741362673959, 0.22238103445337447054},
    {0.96028985649753623168, 0.10122853629037625915},
};

constexpr GaussPoint g10[] = {
    {-0.97390652851717172008, 0.066671344308688137594},
    {-0.86506336668898451073, 0.14945134915058059315},
    {-0.67940956829902440623, 0.219086362515982044},
    {-0.4333953941292471908, 0.26926671930999635509},
    {-0.14887433898163121088, 0.29552422471475287017},
    {0.14887433898163121088, 0.29552422471475287017},
    {0.4333953941292471908, 0.26926671930999635509},
    {0.67940956829902440623, 0.219086362515982044},
    {0.86506336668898451073, 0.14945134915058059315},
    {0.97390652851717172008, 0.066671344308688137594},
};

constexpr GaussPoint g12[] = {
    {-0.98156063424671925069, 0.047175336386511827195},
    {-0.90411725637047485668, 0.10693932599531843096},
    {-0.76990267419430468704, 0.16007832854334622633},
    {-0.5873179542866174473, 0.20316742672306592175},
    {-0.36783149899818019375, 0.23349253653835480876},
    {-0.12523340851146891547, 0.249147045813402785},
    {0.12523340851146891547, 0.249147045813402785},
    {0.36783149899818019375, 0.23349253653835480876},
    {0.5873179542866174473, 0.20316742672306592175},
    {0.76990267419430468704, 0.16007832854334622633},
    {0.90411725637047485668, 0.10693932599531843096},
    {0.98156063424671925069, 0.047175336386511827195},
};

constexpr GaussPoint g16[] = {
    {-0.9894009349916499326, 0.027152459411754094852},
    {-0.94457502307323257608, 0.062253523938647892863},
    {-0.86563120238783174388, 0.09515851168249278481},
    {-0.7554044083550030339, 0.12462897125553387205},
    {-0.61787624440264374845, 0.14959598881657673208},
    {-0.45801677765722738634, 0.16915651939500253819},
    {-0.28160355077925891323, 0.18260341504492358887},
    {-0.095012509837637440185, 0.18945061045506849629},
    {0.095012509837637440185, 0.18945061045506849629},
    {0.28160355077925891323, 0.18260341504492358887},
    {0.45801677765722738634, 0.16915651939500253819},
    {0.61787624440264374845, 0.14959598881657673208},
    {0.7554044083550030339, 0.12462897125553387205},
    {0.86563120238783174388, 0.09515851168249278481},
    {0.94457502307323257608, 0.062253523938647892863},
    {0.9894009349916499326, 0.027152459411754094852},
};

constexpr GaussPoint g24[] = {
    {-0.99518721999702131, 0.012341229799987091},
    {-0.97472855597130947, 0.028531388628933743},
    {-0.9382745520027328, 0.044277438817419551},
    {-0.88641552700440096, 0.059298584915436742},
    {-0.82000198597390295, 0.073346481411080411},
    {-0.74012419157855436, 0.086190161531953288},
    {-0.64809365193697555, 0.097618652104114065},
    {-0.54542147138883956, 0.10744427011596561},
    {-0.43379350762604513, 0.11550566805372561},
    {-0.3150426796961634, 0.12167047292780342},
    {-0.19111886747361631, 0.1258374563468283},
    {-0.06405689286260563, 0.12793819534675221},
    {0.06405689286260563, 0.12793819534675221},
    {0.19111886747361631, 0.1258374563468283},
    {0.3150426796961634, 0.12167047292780342},
    {0.43379350762604513, 0.11550566805372561},
    {0.54542147138883956, 0.10744427011596561},
    {0.64809365193697555, 0.097618652104114065},
    {0.74012419157855436, 0.086190161531953288},
    {0.82000198597390295, 0.073346481411080411},
    {0.88641552700440096, 0.059298584915436742},
    {0.9382745520027328, 0.044277438817419551},
    {0.97472855597130947, 0.028531388628933743},
    {0.99518721999702131, 0.012341229799987091},
};

constexpr GaussPoint g32[] = {
    {-0.99726386184948157, 0.0070186100094692984},
    {-0.98561151154526838, 0.016274394730905965},
    {-0.96476225558750639, 0.025392065309262427},
    {-0.93490607593773967, 0.034273862913021626},
    {-0.8963211557660522, 0.042835898022226426},
    {-0.84936761373256997, 0.050998059262376244},
    {-0.79448379596794239, 0.058684093478535704},
    {-0.73218211874028971, 0.065822222776361752},
    {-0.66304426693021523, 0.072345794108848449},
    {-0.5877157572407623, 0.078193895787070311},
    {-0.50689990893222936, 0.083311924226946846},
    {-0.42135127613063533, 0.087652093004403908},
    {-0.33186860228212767, 0.091173878695763863},
    {-0.23928736225213706, 0.093844399080804566},
    {-0.14447196158279649, 0.095638720079274833},
    {-0.04830766568773831, 0.096540088514727812},
    {0.04830766568773831, 0.096540088514727812},
    {0.14447196158279649, 0.095638720079274833},
    {0.23928736225213706, 0.093844399080804566},
    {0.33186860228212767, 0.091173878695763863},
    {0.42135127613063533, 0.087652093004403908},
    {0.50689990893222936, 0.083311924226946846},
    {0.5877157572407623, 0.078193895787070311},
    {0.66304426693021523, 0.072345794108848449},
    {0.73218211874028971, 0.065822222776361752},
    {0.79448379596794239, 0.058684093478535704},
    {0.84936761373256997, 0.050998059262376244},
    {0.8963211557660522, 0.042835898022226426},
    {0.93490607593773967, 0.034273862913021626},
    {0.96476225558750639, 0.025392065309262427},
    {0.98561151154526838, 0.016274394730905965},
    {0.99726386184948157, 0.0070186100094692984},
};

} // namespace

std::span<const GaussPoint> gauss_rule(int order)
{
    if (order <= 4)
        return g4;
    if (order <= 6)
        return g6;
    if (order <= 8)
        return g8;
    if (order <= 10)
        return g10;
    if (order <= 12)
        return g12;
    if (order <= 16)
        return g16;
    if (order <= 24)
        return g24;
    return g32;
}

} // namespace hsbem
