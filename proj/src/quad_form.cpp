#include "meanlab/quad_form.hpp"

#include "meanlab/operator_means.hpp"

namespace meanlab {

double QuadForm::value(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != dim())
        throw DimMismatch(dim(), static_cast<int>(x.size()));
    const std::vector<double> ax = matvec(a.raw(), x);
    double acc = 0.0;
    for (size_t i = 0; i < x.size(); ++i) acc += x[i] * ax[i];
    return 0.5 * acc;
}

QuadForm conjugate_quad(const QuadForm& q) {
    return QuadForm(spd_inverse(q.a));
}

QuadForm harmonic_combine_quad(const QuadForm& f, const QuadForm& g, const Weight& t) {
    if (f.dim() != g.dim()) throw DimMismatch(f.dim(), g.dim());
    return QuadForm(op_mean(f.a, g.a, t, OpMeanKind::harm));
}

} // namespace meanlab
