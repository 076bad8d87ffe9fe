#include "qthydro/pde_system.hpp"

#include "qthydro/errors.hpp"

namespace qthydro {

std::string_view to_string(SystemKind kind) {
    switch (kind) {
        case SystemKind::Nelson: return "nelson";
        case SystemKind::ModifiedT0: return "modified-t0";
        case SystemKind::GeneralT: return "general-t";
        case SystemKind::Custom: return "custom";
    }
    return "unknown";
}

namespace {

PdeSystem::SourceFn make_source(PdeSystem::PotentialGradient pot, double sign) {
    if (!pot) {
        return [](double, double, StateVec) { return std::array<double, 2>{0.0, 0.0}; };
    }
    return [pot = std::move(pot), sign](double, double q, StateVec) {
        return std::array<double, 2>{0.0, sign * pot(q)};
    };
}

}  // namespace

PdeSystem make_nelson(PdeSystem::PotentialGradient pot) {
    PdeSystem sys;
    sys.kind = SystemKind::Nelson;
    sys.coeffs = [](double, double, StateVec s) {
        return CoeffTable{1.0, s.v, 0.0, s.u,
                          0.0, -s.u, 1.0, s.v};
    };
    sys.source = make_source(pot, +1.0);
    sys.potential_gradient = std::move(pot);
    return sys;
}

PdeSystem make_modified_t0(PdeSystem::PotentialGradient pot) {
    PdeSystem sys;
    sys.kind = SystemKind::ModifiedT0;
    sys.coeffs = [](double, double, StateVec s) {
        return CoeffTable{1.0, 2.0 * s.u + s.v, 0.0, s.u,
                          0.0, -s.u, 1.0, s.v};
    };
    sys.source = make_source(pot, +1.0);
    sys.potential_gradient = std::move(pot);
    return sys;
}

PdeSystem make_general_t(double xi, PdeSystem::PotentialGradient pot) {
    if (!(xi >= 1.0)) {
        throw InvalidParameterError("make_general_t: xi must be >= 1");
    }
    PdeSystem sys;
    sys.kind = SystemKind::GeneralT;
    sys.xi = xi;
    sys.coeffs = [xi](double, double, StateVec s) {
        return CoeffTable{1.0, 2.0 * s.u + s.v, 0.0, s.u,
                          0.0, -(xi * s.u), 1.0, s.v};
    };
    sys.source = make_source(pot, -1.0);
    sys.potential_gradient = std::move(pot);
    return sys;
}

}  // namespace qthydro
