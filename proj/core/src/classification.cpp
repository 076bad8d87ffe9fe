#include "qthydro/classification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qthydro/errors.hpp"

namespace qthydro {

std::string_view to_string(PdeType type) {
    switch (type) {
        case PdeType::Elliptic: return "elliptic";
        case PdeType::Parabolic: return "parabolic";
        case PdeType::Hyperbolic: return "hyperbolic";
        case PdeType::Degenerate: return "degenerate";
    }
    return "unknown";
}

namespace {

// Kahan's fma-compensated 2x2 determinant x1 y2 - x2 y1: the error stays
// within 2 ulps of the determinant itself even when the products cancel,
// which keeps the identically-zero discriminants at round-off scale.
double det2(double x1, double y2, double x2, double y1) {
    const double w = x2 * y1;
    const double e = std::fma(x2, y1, -w);
    const double f = std::fma(x1, y2, -w);
    return f - e;
}

}  // namespace

Classification classify_table(const CoeffTable& tb) {
    Classification cls;
    cls.a = det2(tb.B1, tb.D2, tb.B2, tb.D1);
    cls.b = 0.5 * (det2(tb.A1, tb.D2, tb.A2, tb.D1) + det2(tb.B1, tb.C2, tb.B2, tb.C1));
    cls.c = det2(tb.A1, tb.C2, tb.A2, tb.C1);
    cls.discriminant = det2(cls.b, cls.b, cls.a, cls.c);

    if (cls.a == 0.0 && cls.b == 0.0 && cls.c == 0.0) {
        cls.type_tag = PdeType::Degenerate;
        return cls;
    }

    const double scale = std::max(1.0, cls.b * cls.b + std::abs(cls.a * cls.c));
    if (std::abs(cls.discriminant) <= kDiscriminantTol * scale) {
        cls.type_tag = PdeType::Parabolic;
        cls.n_slopes = 1;
        // double root of c s^2 - 2 b s + a = 0 with s = dq/dt
        if (cls.c != 0.0) {
            cls.char_slopes[0] = cls.b / cls.c;
        } else if (cls.b != 0.0) {
            cls.char_slopes[0] = cls.a / (2.0 * cls.b);
        } else {
            // a t_l^2 = 0 with a != 0: direction (0, 1), vertical in (t, q)
            cls.char_slopes[0] = std::numeric_limits<double>::infinity();
        }
        return cls;
    }

    if (cls.discriminant < 0.0) {
        cls.type_tag = PdeType::Elliptic;
        return cls;
    }

    cls.type_tag = PdeType::Hyperbolic;
    cls.n_slopes = 2;
    const double root = std::sqrt(cls.discriminant);
    if (cls.c != 0.0) {
        // q = b + sign(b) sqrt(disc) avoids cancellation in one root;
        // the other follows from the product a/c (Vieta).
        const double s = cls.b >= 0.0 ? 1.0 : -1.0;
        const double qv = cls.b + s * root;
        const double s1 = qv / cls.c;
        const double s2 = (qv != 0.0) ? cls.a / qv : (cls.b - s * root) / cls.c;
        cls.char_slopes = {std::min(s1, s2), std::max(s1, s2)};
    } else {
        // c = 0: one finite root a/(2b), the other direction is t_l = 0.
        cls.char_slopes = {cls.a / (2.0 * cls.b), std::numeric_limits<double>::infinity()};
    }
    return cls;
}

Classification classify(const PdeSystem& sys, double t, double q, StateVec s) {
    return classify_table(sys.coefficients(t, q, s));
}

double characteristic_speed(const PdeSystem& sys, StateVec s) {
    const Classification cls = classify(sys, 0.0, 0.0, s);
    if (cls.type_tag != PdeType::Parabolic) {
        throw WrongTypeError("characteristic_speed: system is not parabolic at the given state");
    }
    if (sys.kind == SystemKind::ModifiedT0 || sys.kind == SystemKind::GeneralT) {
        return s.u + s.v;
    }
    return cls.char_slopes[0];
}

FieldClassification classify_field(const PdeSystem& sys, const FieldState& field) {
    field.validate();
    FieldClassification out;
    const std::size_t n = field.size();
    out.points.reserve(n);
    out.summary.disc_min = std::numeric_limits<double>::infinity();
    out.summary.disc_max = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        Classification cls =
            classify(sys, field.t, field.grid.q(k), StateVec{field.u[k], field.v[k]});
        out.summary.disc_min = std::min(out.summary.disc_min, cls.discriminant);
        out.summary.disc_max = std::max(out.summary.disc_max, cls.discriminant);
        switch (cls.type_tag) {
            case PdeType::Elliptic: ++out.summary.n_elliptic; break;
            case PdeType::Parabolic: ++out.summary.n_parabolic; break;
            case PdeType::Hyperbolic: ++out.summary.n_hyperbolic; break;
            case PdeType::Degenerate: ++out.summary.n_degenerate; break;
        }
        out.points.push_back(cls);
    }
    return out;
}

}  // namespace qthydro
