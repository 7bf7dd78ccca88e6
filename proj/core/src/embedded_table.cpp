#include "gsgp/slope_data.hpp"

namespace gsgp {

namespace {

struct Row {
    double gamma, c, phi, beta, h, ru;
    int s;
    double fs;
    int comp_s;
    double comp_fs;
};

// 52 study cases: gamma, c, phi, beta, H, ru, actual S, actual FS,
// reference (computational) S, reference FS. Row 32 repeats row 1's
// reference FS as printed in the source table; kept verbatim.
constexpr Row kRows[] = {
    {18.80, 14.40, 25.02, 19.98, 30.6, 0, 1, 1.876, -1, 1.473},
    {18.77, 30.01, 9.99, 25.02, 50, 0.1, 1, 1.400, 1, 1.313},
    {19.97, 19.96, 36, 45, 50, 0.5, -1, 0.829, -1, 0.963},
    {22.38, 10.05, 35.01, 45, 10, 0.4, -1, 0.901, -1, 0.890},
    {18.77, 30.01, 19.98, 30, 50, 0.1, 1, 1.460, 1, 1.359},
    {28.40, 39.16, 37.98, 34.98, 100, 0, 1, 1.989, 1, 2.000},
    {19.97, 10.05, 28.98, 34.03, 6, 0.3, 1, 1.340, 1, 1.257},
    {13.97, 12.00, 26.01, 30, 88, 0, -1, 1.021, -1, 0.848},
    {18.77, 25.06, 19.98, 30, 50, 0.2, -1, 1.210, -1, 1.213},
    {18.83, 10.35, 21.29, 34.03, 37, 0.3, -1, 1.289, -1, 1.227},
    {28.40, 29.41, 35.01, 34.98, 100, 0, 1, 1.781, 1, 1.673},
    {18.77, 25.06, 9.99, 25.02, 50, 0.2, -1, 1.180, -1, 1.173},
    {16.47, 11.55, 0, 30, 3.6, 0, -1, 1.000, -1, 0.982},
    {20.56, 16.21, 26.51, 30, 40, 0, -1, 1.250, -1, 1.199},
    {18.66, 26.41, 14.99, 34.98, 8.2, 0, -1, 1.111, -1, 1.154},
    {13.97, 12.00, 26.01, 30, 88, 0.5, -1, 0.626, -1, 0.848},
    {25.96, 150.1, 45, 49.98, 200, 0, 1, 1.199, 1, 1.271},
    {18.46, 25.06, 0, 30, 6, 0, -1, 1.090, -1, 1.059},
    {19.97, 40.06, 30.02, 30, 15, 0.3, 1, 1.841, 1, 1.956},
    {20.39, 24.91, 13.01, 22, 10.6, 0.4, 1, 1.400, 1, 1.439},
    {19.60, 12.00, 19.98, 22, 12.2, 0.4, -1, 1.349, -1, 1.341},
    {20.96, 19.96, 40.01, 40.02, 12, 0, 1, 1.841, 1, 1.786},
    {17.98, 24.01, 30.15, 45, 20, 0.1, -1, 1.120, -1, 1.205},
    {20.96, 45.02, 25.02, 49.03, 12, 0.3, 1, 1.529, 1, 1.502},
    {22.38, 99.93, 45, 45, 15, 0.3, 1, 1.799, 1, 1.838},
    {18.77, 19.96, 19.98, 30, 50, 0.3, -1, 1.000, -1, 1.072},
    {21.78, 8.55, 32, 27.98, 12.8, 0.5, -1, 1.030, -1, 1.151},
    {21.47, 6.90, 30.02, 31.01, 76.8, 0.4, -1, 1.009, -1, 1.007},
    {21.98, 19.96, 22.01, 19.98, 180, 0.1, -1, 0.991, -1, 1.006},
    {18.80, 57.47, 19.98, 19.98, 30.6, 0, 1, 2.044, 1, 1.930},
    {21.36, 10.05, 30.33, 30, 20, 0, 1, 1.700, 1, 1.572},
    {18.80, 14.40, 25.02, 19.98, 30.6, 0.5, -1, 1.111, -1, 1.473},
    {15.99, 70.07, 19.98, 40.02, 115, 0, -1, 1.111, -1, 1.130},
    {21.98, 19.96, 36, 45, 50, 0, -1, 1.021, -1, 1.018},
    {19.08, 10.05, 9.99, 25.02, 50, 0.4, -1, 0.649, -1, 0.699},
    {19.08, 10.05, 19.98, 30, 50, 0.4, -1, 0.649, -1, 0.754},
    {17.98, 45.02, 25.02, 25.02, 14, 0.3, 1, 2.091, 1, 2.009},
    {24.96, 120.0, 45, 53, 120, 0, 1, 1.301, 1, 1.273},
    {20.39, 33.46, 10.98, 16.01, 45.8, 0.2, -1, 1.280, -1, 1.289},
    {17.98, 4.95, 30.02, 19.98, 8, 0.3, 1, 2.049, 1, 1.931},
    {18.97, 30.01, 35.01, 34.98, 11, 0.2, 1, 2.000, 1, 1.726},
    {21.98, 19.96, 22.01, 19.98, 180, 0, -1, 1.120, -1, 1.006},
    {20.96, 30.01, 35.01, 40.02, 12, 0.4, 1, 1.490, 1, 1.492},
    {20.96, 34.96, 27.99, 40.02, 12, 0.5, 1, 1.430, 1, 1.487},
    {18.46, 12.00, 0, 30, 6, 0, -1, 0.781, -1, 0.996},
    {19.97, 40.06, 40.01, 40.02, 10, 0.2, 1, 2.310, 1, 1.935},
    {19.97, 19.96, 36, 45, 50, 0.3, -1, 0.961, -1, 0.963},
    {18.77, 19.96, 9.99, 25.02, 50, 0.3, -1, 0.970, -1, 1.011},
    {18.83, 24.76, 21.29, 29.2, 37, 0.5, -1, 1.070, -1, 1.200},
    {19.03, 11.70, 27.99, 34.98, 21, 0.1, -1, 1.090, -1, 1.199},
    {22.38, 10.05, 35.01, 30, 10, 0, 1, 2.000, -1, 1.564},
    {18.80, 15.31, 30.02, 25.02, 10.6, 0.4, 1, 1.631, 1, 1.747},
};

EmbeddedTable build() {
    EmbeddedTable t;
    std::vector<SlopeSample> samples;
    samples.reserve(std::size(kRows));
    for (const Row& r : kRows) {
        samples.push_back({r.gamma, r.c, r.phi, r.beta, r.h, r.ru, r.s, r.fs});
        t.computational_s.push_back(r.comp_s);
        t.computational_fs.push_back(r.comp_fs);
    }
    t.data = SlopeDataset(std::move(samples));
    return t;
}

} // namespace

const EmbeddedTable& embedded_table() {
    static const EmbeddedTable table = build();
    return table;
}

} // namespace gsgp
