#include "target_registry.hpp"

#include <array>

namespace procova::detail {

namespace {

struct Entry {
  char model;
  int shift;
  int variant;
  std::vector<double> targets;
};

// Generated by `procova targets` (10^7 samples, seed 20250101).
// Columns: beta0, betaA, beta1[, beta2][, beta0+betaA].
const std::array<Entry, 108>& table() {
  static const std::array<Entry, 108> entries{{
    {'A', 1, 0, {-1.6209256159527285e-14, 0.8349999999999973, 0.99999999999999722}},
    {'A', 1, 1, {-3.67741180159299, 0.8349999999999973, 0.99999999999999711, -2.8424118015929927}},
    {'A', 1, 2, {-3.67741180159299, 0.8349999999999973, 0.99999999999999545, 3.2669749384721585e-15, -2.8424118015929927}},
    {'A', 2, 0, {-1.6209256159527285e-14, 0.8349999999999973, 0.99999999999999722}},
    {'A', 2, 1, {-3.67741180159299, 0.8349999999999973, 0.99999999999999711, -2.8424118015929927}},
    {'A', 2, 2, {-3.67741180159299, 0.8349999999999973, 0.99999999999999545, 3.2669749384721585e-15, -2.8424118015929927}},
    {'A', 3, 0, {-1.6209256159527285e-14, 0.8349999999999973, 0.99999999999999722}},
    {'A', 3, 1, {-3.67741180159299, 0.8349999999999973, 0.99999999999999711, -2.8424118015929927}},
    {'A', 3, 2, {-3.67741180159299, 0.8349999999999973, 0.99999999999999545, 3.2669749384721585e-15, -2.8424118015929927}},
    {'A', 4, 0, {-9.6145313932538556e-14, 0.8349999999999973, 0.99999999999999856}},
    {'A', 4, 1, {-3.67741180159299, 0.8349999999999973, 0.99999999999999856, -2.8424118015929927}},
    {'A', 4, 2, {-3.67741180159299, 0.8349999999999973, 0.99999999999999756, 2.041859336545101e-15, -2.8424118015929927}},
    {'A', 5, 0, {-9.6145313932538556e-14, 0.8349999999999973, 0.99999999999999856}},
    {'A', 5, 1, {-3.67741180159299, 0.8349999999999973, 0.99999999999999856, -2.8424118015929927}},
    {'A', 5, 2, {-3.67741180159299, 0.8349999999999973, 0.99999999999999756, 2.041859336545101e-15, -2.8424118015929927}},
    {'A', 6, 0, {-9.6145313932538556e-14, 0.8349999999999973, 0.99999999999999856}},
    {'A', 6, 1, {-3.67741180159299, 0.8349999999999973, 0.99999999999999856, -2.8424118015929927}},
    {'A', 6, 2, {-3.67741180159299, 0.8349999999999973, 0.99999999999999756, 2.041859336545101e-15, -2.8424118015929927}},
    {'A', 7, 0, {2.7594593277058266e-13, 0.8349999999999973, 1.0000000000000002}},
    {'A', 7, 1, {-3.67741180159299, 0.8349999999999973, 1.0000000000000002, -2.8424118015929927}},
    {'A', 7, 2, {-3.67741180159299, 0.8349999999999973, 0.99999999999999944, 1.6334874692360865e-15, -2.8424118015929927}},
    {'A', 8, 0, {2.7594593277058266e-13, 0.8349999999999973, 1.0000000000000002}},
    {'A', 8, 1, {-3.67741180159299, 0.8349999999999973, 1.0000000000000002, -2.8424118015929927}},
    {'A', 8, 2, {-3.67741180159299, 0.8349999999999973, 0.99999999999999944, 1.6334874692360865e-15, -2.8424118015929927}},
    {'A', 9, 0, {2.7594593277058266e-13, 0.8349999999999973, 1.0000000000000002}},
    {'A', 9, 1, {-3.67741180159299, 0.8349999999999973, 1.0000000000000002, -2.8424118015929927}},
    {'A', 9, 2, {-3.67741180159299, 0.8349999999999973, 0.99999999999999944, 1.6334874692360865e-15, -2.8424118015929927}},
    {'B', 1, 0, {-1.8135982520704188, 0.84026404868403048, 0.50682753253666291}},
    {'B', 1, 1, {-3.6774118015929953, 0.84026404868403048, 0.50682753253666302, -2.8371477529089648}},
    {'B', 1, 2, {-3.6774118015929953, 0.84026404868403048, 0.99999999999999689, -0.98634493492666786, -2.8371477529089648}},
    {'B', 2, 0, {-1.8135982520704188, 0.84026404868403048, 0.50682753253666291}},
    {'B', 2, 1, {-3.6774118015929953, 0.84026404868403048, 0.50682753253666302, -2.8371477529089648}},
    {'B', 2, 2, {-3.6774118015929953, 0.84026404868403048, 0.99999999999999689, -0.98634493492666786, -2.8371477529089648}},
    {'B', 3, 0, {-1.8135982520704188, 0.84026404868403048, 0.50682753253666291}},
    {'B', 3, 1, {-3.6774118015929953, 0.84026404868403048, 0.50682753253666302, -2.8371477529089648}},
    {'B', 3, 2, {-3.6774118015929953, 0.84026404868403048, 0.99999999999999689, -0.98634493492666786, -2.8371477529089648}},
    {'B', 4, 0, {-1.813598252070459, 0.84026404868403048, 0.50682753253666368}},
    {'B', 4, 1, {-3.6774118015929953, 0.84026404868403048, 0.50682753253666379, -2.8371477529089648}},
    {'B', 4, 2, {-3.6774118015929953, 0.84026404868403048, 0.99999999999999889, -0.9863449349266703, -2.8371477529089648}},
    {'B', 5, 0, {-1.813598252070459, 0.84026404868403048, 0.50682753253666368}},
    {'B', 5, 1, {-3.6774118015929953, 0.84026404868403048, 0.50682753253666379, -2.8371477529089648}},
    {'B', 5, 2, {-3.6774118015929953, 0.84026404868403048, 0.99999999999999889, -0.9863449349266703, -2.8371477529089648}},
    {'B', 6, 0, {-1.813598252070459, 0.84026404868403048, 0.50682753253666368}},
    {'B', 6, 1, {-3.6774118015929953, 0.84026404868403048, 0.50682753253666379, -2.8371477529089648}},
    {'B', 6, 2, {-3.6774118015929953, 0.84026404868403048, 0.99999999999999889, -0.9863449349266703, -2.8371477529089648}},
    {'B', 7, 0, {-1.8135982520702716, 0.84026404868403048, 0.50682753253666424}},
    {'B', 7, 1, {-3.6774118015929953, 0.84026404868403048, 0.50682753253666424, -2.8371477529089648}},
    {'B', 7, 2, {-3.6774118015929953, 0.84026404868403048, 1, -0.98634493492667152, -2.8371477529089648}},
    {'B', 8, 0, {-1.8135982520702716, 0.84026404868403048, 0.50682753253666424}},
    {'B', 8, 1, {-3.6774118015929953, 0.84026404868403048, 0.50682753253666424, -2.8371477529089648}},
    {'B', 8, 2, {-3.6774118015929953, 0.84026404868403048, 1, -0.98634493492667152, -2.8371477529089648}},
    {'B', 9, 0, {-1.8135982520702716, 0.84026404868403048, 0.50682753253666424}},
    {'B', 9, 1, {-3.6774118015929953, 0.84026404868403048, 0.50682753253666424, -2.8371477529089648}},
    {'B', 9, 2, {-3.6774118015929953, 0.84026404868403048, 1, -0.98634493492667152, -2.8371477529089648}},
    {'C', 1, 0, {0.0011899454378467844, 0.83500000000000973, 0.99975007523424275}},
    {'C', 1, 1, {5.0579031524792599, 0.83500000000000973, 0.99975007523424031, 5.8929031524792697}},
    {'C', 1, 2, {5.0579031524792599, 0.83500000000000973, 0.99975007523430093, -1.2124377471517543e-13, 5.8929031524792697}},
    {'C', 2, 0, {-0.67264826879869788, 0.83500000000000973, 1.4210532115365599}},
    {'C', 2, 1, {5.0579031524792599, 0.83500000000000973, 1.4210532115365604, 5.8929031524792697}},
    {'C', 2, 2, {5.0579031524792599, 0.83500000000000973, 1.4210532115365109, 9.8903825210882449e-14, 5.8929031524792697}},
    {'C', 3, 0, {5.0966148078469899, 0.83500000000000973, -0.66512446964203498}},
    {'C', 3, 1, {5.0579031524792599, 0.83500000000000973, -0.66512446964203498, 5.8929031524792697}},
    {'C', 3, 2, {5.0579031524792599, 0.83500000000000973, -0.66512446964203442, -1.1117886317084975e-15, 5.8929031524792697}},
    {'C', 4, 0, {0.0021842792256643317, 0.83500000000000973, 0.99975007523432646}},
    {'C', 4, 1, {5.0579031524792599, 0.83500000000000973, 0.99975007523432424, 5.8929031524792697}},
    {'C', 4, 2, {5.0579031524792599, 0.83500000000000973, 0.99975007523434756, -4.6632221044303675e-14, 5.8929031524792697}},
    {'C', 5, 0, {-0.67023593476212873, 0.83500000000000973, 1.421053211536548}},
    {'C', 5, 1, {5.0579031524792599, 0.83500000000000973, 1.4210532115365426, 5.8929031524792697}},
    {'C', 5, 2, {5.0579031524792599, 0.83500000000000973, 1.4210532115364636, 1.5824612033739783e-13, 5.8929031524792697}},
    {'C', 6, 0, {5.0953168499611508, 0.83500000000000973, -0.66512446964203398}},
    {'C', 6, 1, {5.0579031524792599, 0.83500000000000973, -0.66512446964203398, 5.8929031524792697}},
    {'C', 6, 2, {5.0579031524792599, 0.83500000000000973, -0.66512446964203398, 0, 5.8929031524792697}},
    {'C', 7, 0, {5.2683319507344306, 0.83500000000000973, -0.02624241320355658}},
    {'C', 7, 1, {5.0579031524792599, 0.83500000000000973, -0.026242413203551623, 5.8929031524792697}},
    {'C', 7, 2, {5.0579031524792599, 0.83500000000000973, -0.026242413203578282, 5.3321821876725565e-14, 5.8929031524792697}},
    {'C', 8, 0, {6.3370557476876392, 0.83500000000000973, -0.18295755361615196}},
    {'C', 8, 1, {5.0579031524792599, 0.83500000000000973, -0.1829575536161534, 5.8929031524792697}},
    {'C', 8, 2, {5.0579031524792599, 0.83500000000000973, -0.18295755361616248, 1.817012576654763e-14, 5.8929031524792697}},
    {'C', 9, 0, {5.9278639875726817, 0.83500000000000973, -0.28840214082944371}},
    {'C', 9, 1, {5.0579031524792599, 0.83500000000000973, -0.28840214082944365, 5.8929031524792697}},
    {'C', 9, 2, {5.0579031524792599, 0.83500000000000973, -0.28840214082943921, -8.9338873722571206e-15, 5.8929031524792697}},
    {'D', 1, 0, {1.22204356659249, 0.83613544250846772, 0.75837817027832344}},
    {'D', 1, 1, {5.0579031524792706, 0.83613544250846772, 0.75837817027832211, 5.8940385949877383}},
    {'D', 1, 2, {5.0579031524792706, 0.83613544250846772, 0.99975007523427295, -0.48274380991190169, 5.8940385949877383}},
    {'D', 2, 0, {0.60141120401656845, 0.83613544250846772, 1.1051139288333016}},
    {'D', 2, 1, {5.0579031524792706, 0.83613544250846772, 1.1051139288333058, 5.8940385949877383}},
    {'D', 2, 2, {5.0579031524792706, 0.83613544250846772, 1.4210532115364911, -0.63187856540637033, 5.8940385949877383}},
    {'D', 3, 0, {5.0832635315689902, 0.83613544250846772, -0.43572946007449642}},
    {'D', 3, 1, {5.0579031524792706, 0.83613544250846772, -0.43572946007449642, 5.8940385949877383}},
    {'D', 3, 2, {5.0579031524792706, 0.83613544250846772, -0.66512446964203553, 0.45879001913507816, 5.8940385949877383}},
    {'D', 4, 0, {1.2227978361419334, 0.83613544250846772, 0.75837817027835697}},
    {'D', 4, 1, {5.0579031524792706, 0.83613544250846772, 0.75837817027835919, 5.8940385949877383}},
    {'D', 4, 2, {5.0579031524792706, 0.83613544250846772, 0.99975007523428683, -0.48274380991185534, 5.8940385949877383}},
    {'D', 5, 0, {0.60328720973058036, 0.83613544250846772, 1.1051139288333016}},
    {'D', 5, 1, {5.0579031524792706, 0.83613544250846772, 1.1051139288332965, 5.8940385949877383}},
    {'D', 5, 2, {5.0579031524792706, 0.83613544250846772, 1.4210532115365326, -0.63187856540647236, 5.8940385949877383}},
    {'D', 6, 0, {5.0824132268296376, 0.83613544250846772, -0.43572946007449537}},
    {'D', 6, 1, {5.0579031524792706, 0.83613544250846772, -0.43572946007449537, 5.8940385949877383}},
    {'D', 6, 2, {5.0579031524792706, 0.83613544250846772, -0.6651244696420342, 0.45879001913507778, 5.8940385949877383}},
    {'D', 7, 0, {5.030109206018059, 0.83613544250846772, 0.0034661616358622194}},
    {'D', 7, 1, {5.0579031524792706, 0.83613544250846772, 0.0034661616358645912, 5.8940385949877383}},
    {'D', 7, 2, {5.0579031524792706, 0.83613544250846772, -0.026242413203556952, 0.059417149678843088, 5.8940385949877383}},
    {'D', 8, 0, {5.8454262763009623, 0.83613544250846772, -0.11263965275940724}},
    {'D', 8, 1, {5.0579031524792706, 0.83613544250846772, -0.11263965275941037, 5.8940385949877383}},
    {'D', 8, 2, {5.0579031524792706, 0.83613544250846772, -0.18295755361616703, 0.14063580171351331, 5.8940385949877383}},
    {'D', 9, 0, {5.6631800733761155, 0.83613544250846772, -0.20065634306693614}},
    {'D', 9, 1, {5.0579031524792706, 0.83613544250846772, -0.20065634306693583, 5.8940385949877383}},
    {'D', 9, 2, {5.0579031524792706, 0.83613544250846772, -0.28840214082944005, 0.17549159552500837, 5.8940385949877383}},
  }};
  return entries;
}

}  // namespace

const std::vector<double>* lookup_targets(OutcomeModel model, int shift_pattern,
                                          ModelVariant variant) {
  for (const auto& e : table()) {
    if (e.model == to_char(model) && e.shift == shift_pattern &&
        e.variant == static_cast<int>(variant)) {
      return &e.targets;
    }
  }
  return nullptr;
}

}  // namespace procova::detail
