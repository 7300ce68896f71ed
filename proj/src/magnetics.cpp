#include "magscissor/magnetics.hpp"

#include "pair_kernels.hpp"

namespace magscissor {

namespace {

detail::LaneOut single_pair(const Dipole& source, const Dipole& target) {
    if (source.position == target.position) {
        throw DomainError("coincident dipoles");
    }
    const auto& s = source;
    const auto& t = target;
    return detail::pair_lane(s.position.x, s.position.y, s.position.z, s.moment.x, s.moment.y,
                             s.moment.z, t.position.x, t.position.y, t.position.z, t.moment.x,
                             t.moment.y, t.moment.z);
}

Vec3 checked(Vec3 v) {
    if (!is_finite(v)) {
        throw DomainError("dipole interaction is not finite (separation too small)");
    }
    return v;
}

}  // namespace

Vec3 dipole_force(const Dipole& source, const Dipole& target) {
    const auto o = single_pair(source, target);
    return checked({o.fx, o.fy, o.fz});
}

Vec3 interaction_torque(const Dipole& source, const Dipole& target) {
    const auto o = single_pair(source, target);
    return checked({o.tx, o.ty, o.tz});
}

void DipoleSoA::reserve(std::size_t n) {
    for (auto* v : {&px, &py, &pz, &mx, &my, &mz}) v->reserve(n);
}

void DipoleSoA::clear() {
    for (auto* v : {&px, &py, &pz, &mx, &my, &mz}) v->clear();
}

void DipoleSoA::push_back(const Dipole& d) {
    px.push_back(d.position.x);
    py.push_back(d.position.y);
    pz.push_back(d.position.z);
    mx.push_back(d.moment.x);
    my.push_back(d.moment.y);
    mz.push_back(d.moment.z);
}

Dipole DipoleSoA::at(std::size_t k) const {
    return {{px[k], py[k], pz[k]}, {mx[k], my[k], mz[k]}};
}

void PairResultSoA::resize(std::size_t n) {
    for (auto* v : {&fx, &fy, &fz, &tx, &ty, &tz}) v->resize(n);
}

}  // namespace magscissor
