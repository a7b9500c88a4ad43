#pragma once

#include <array>

namespace softarm::testing {

struct SingleCableReference {
  int phi_deg;
  double delta_l_model;
  double delta_l_baseline;
  double incident_angle;
  double cable_curvature;
  double tension;
};

// Generated by tests/oracle/single_cable_oracle.py. Do not edit by hand.
// Columns: phi_b_deg, delta_l_model, delta_l_baseline, theta0, kappa_c, tension
// Section: L=9.30, d=1.25, K_b=20.02, K_c=3.10, single cable.
inline constexpr std::array<SingleCableReference, 37> kSingleCableReference{{
    {1, 0.021816827583666246029, 0.021816615649929119712, 7.8560521377681599613e-6, 0.001879417563937408163, 0.030057197097638477289},
    {5, 0.10910967364820763654, 0.10908307824964559856, 0.00019938417797750049645, 0.0094514993824589037477, 0.15028598847079311688},
    {10, 0.21837992466877635112, 0.21816615649929119712, 0.00081256211817180012308, 0.01903931231749783223, 0.30057207019454014408},
    {15, 0.3279739844166510202, 0.32724923474893679567, 0.0018624024215180959588, 0.028764359633807145707, 0.45085873836184902571},
    {20, 0.43805778436432806882, 0.43633231299858239423, 0.0033723286367859478395, 0.038628235751900480485, 0.60114736023534449713},
    {25, 0.5487997908763417332, 0.54541539124822799279, 0.0053664861320401982192, 0.048633253789667480103, 0.75144074782800573011},
    {30, 0.66037090026974352148, 0.65449846949787359135, 0.0078699408475652198921, 0.058782488002757505945, 0.90174383794636895199},
    {35, 0.77294440087019950611, 0.7635815477475191899, 0.010908914228652334559, 0.069079813411891427367, 1.052064497921321201},
    {40, 0.88669600889240419794, 0.87266462599716478846, 0.014511059664189343139, 0.079529942359929646878, 1.202414478367919424},
    {45, 1.0018039852621710004, 0.98174770424681038702, 0.01870578708399091372, 0.090138457551619810919, 1.3528105410315801381},
    {50, 1.1184493410041163089, 1.0908307824964559856, 0.023524644078440917534, 0.10091184082964661109, 1.5032757987400798025},
    {55, 1.2368161395987466771, 1.1999138607461015841, 0.029001764111248328335, 0.11185749649140475119, 1.6538413164552208766},
    {60, 1.3570919058314471079, 1.3089969389957471827, 0.03517439525325887641, 0.12298376729390251002, 1.8045480384869623823},
    {65, 1.4794681521929882662, 1.4180800172453927813, 0.042083526582592913543, 0.13429994034557209702, 1.9554491286426849709},
    {70, 1.6041410359464279619, 1.5271630954950383798, 0.04977463426534336852, 0.14581623872096888569, 2.1066128396705008258},
    {75, 1.7313121626768419636, 1.6362461737446839784, 0.058298575760003346468, 0.15754379267641461153, 2.2581260690890209849},
    {80, 1.8611895556568405355, 1.7453292519943295769, 0.067712669156394714332, 0.16949458152162998752, 2.4100988152251932465},
    {85, 1.9939888149190211275, 1.8544123302439751755, 0.078082006196443390175, 0.18168133310729129557, 2.5626698272953054515},
    {90, 2.1299344958372784725, 1.963495408493620774, 0.089481063237130131894, 0.19411736190033129184, 2.7160138577881352495},
    {95, 2.269261744717226885, 2.0725784867432663726, 0.10199569608723869785, 0.20681631777823218196, 2.8703510915150161646},
    {100, 2.41221823900352851, 2.1816615649929119712, 0.11572563495174799467, 0.21979180447665887147, 3.0259595707881602736},
    {105, 2.5590664931381819683, 2.2907446432425575697, 0.13078763873181356918, 0.23305680667688318227, 3.1831918043372389443},
    {110, 2.7100866092154974852, 2.3998277214922031683, 0.14731953001050379265, 0.24662283414005213743, 3.3424973114679023273},
    {115, 2.8655795764941073597, 2.5089107997418487668, 0.16548542332636445897, 0.26049864367231848022, 3.5044537355315386862},
    {120, 3.0258712589422493661, 2.6179938779914943654, 0.18548259632072275494, 0.27468832420885234073, 3.6698105756782961146},
    {125, 3.1913172609866641065, 2.7270769562411399639, 0.20755066377739539266, 0.28918840819083902992, 3.8395519160916411743},
    {130, 3.3623089384310352584, 2.8361600344907855625, 0.23198404652873352914, 0.30398347031181208757, 4.0149884881880577579},
    {135, 3.5392809423560739913, 2.9452431127404311611, 0.25914926711276734258, 0.3190393313015494483, 4.197896355704807108},
    {140, 3.7227208842204576287, 3.0543261909900767596, 0.28950951409520363875, 0.33429238270085377527, 4.3907322370415050378},
    {145, 3.9131820639246407442, 3.1634092692397223582, 0.32366051698185067825, 0.34963245533415192973, 4.5969798766671475122},
    {150, 4.111300872816306659, 3.2724923474893679567, 0.36238473337430630133, 0.36487457931878206054, 4.82173132627833072},
    {155, 4.3178218642938869952, 3.3815754257390135553, 0.40673667692254000484, 0.37971082831987340826, 5.0727141688190051717},
    {160, 4.5336366171721998914, 3.4906585039886591538, 0.45818461915823241401, 0.39362453388129442103, 5.3622280635003064698},
    {165, 4.7598504884026611657, 3.5997415822383047524, 0.51886311138366312549, 0.40572827796043924033, 5.7111143049652272872},
    {170, 4.9979147606986035212, 3.708824660487950351, 0.59206955490341056268, 0.41443172773421444799, 6.1578700871497876214},
    {175, 5.2499451178379722321, 3.8179077387375959495, 0.68339562929147268162, 0.41666964559904433999, 6.7833183107878479949},
    {180, 5.5197479170436522251, 3.9269908169872415481, 0.80402437605147818265, 0.40567239110877711689, 7.7979028864104912981},
}};

}  // namespace softarm::testing
