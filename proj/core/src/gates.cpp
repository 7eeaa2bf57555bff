// Copyright 2026 The wexpand Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wexpand/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wexpand {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

GateMatrix swap_gate() {
    return GateMatrix("SWAP", 4, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1});
}

// Lifts a step onto the two-slot register.
GateMatrix embed(const CircuitStep &step) {
    if (step.gate.dim() == 2) {
        if (step.slots.size() != 1 || step.slots[0] > 1) {
            throw std::invalid_argument("single-qubit step needs exactly one slot in {0, 1}");
        }
        return step.slots[0] == 0 ? kron(step.gate, identity(2)) : kron(identity(2), step.gate);
    }
    if (step.slots.size() != 2 || step.slots[0] > 1 || step.slots[1] > 1 || step.slots[0] == step.slots[1]) {
        throw std::invalid_argument("two-qubit step needs slots {0, 1} in some order");
    }
    if (step.slots[0] == 0) {
        return step.gate;
    }
    GateMatrix s = swap_gate();
    return s * step.gate * s;
}

}  // namespace

GateMatrix::GateMatrix(std::string name, std::size_t dim, std::vector<Amplitude> entries, ControlSlot control)
    : name_(std::move(name)), dim_(dim), entries_(std::move(entries)), control_(control) {
    if (dim_ != 2 && dim_ != 4) {
        throw std::invalid_argument("gate dimension must be 2 or 4");
    }
    if (entries_.size() != dim_ * dim_) {
        throw std::invalid_argument("gate '" + name_ + "' has the wrong number of entries");
    }
    if (dim_ == 2 && control_ != ControlSlot::kNone) {
        throw std::invalid_argument("a 2x2 gate has no control slot");
    }
}

GateMatrix GateMatrix::adjoint() const {
    std::vector<Amplitude> out(entries_.size());
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            out[c * dim_ + r] = std::conj(entries_[r * dim_ + c]);
        }
    }
    return GateMatrix(name_ + "^dag", dim_, std::move(out), control_);
}

GateMatrix GateMatrix::renamed(std::string name) const {
    GateMatrix g = *this;
    g.name_ = std::move(name);
    return g;
}

GateMatrix operator*(const GateMatrix &a, const GateMatrix &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("cannot multiply gates of different dimension");
    }
    const std::size_t d = a.dim();
    std::vector<Amplitude> out(d * d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            Amplitude acc = 0;
            for (std::size_t k = 0; k < d; ++k) {
                acc += a(r, k) * b(k, c);
            }
            out[r * d + c] = acc;
        }
    }
    return GateMatrix(a.name() + "*" + b.name(), d, std::move(out));
}

GateMatrix kron(const GateMatrix &a, const GateMatrix &b) {
    if (a.dim() != 2 || b.dim() != 2) {
        throw std::invalid_argument("kron is only defined for two 2x2 gates");
    }
    std::vector<Amplitude> out(16);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            out[r * 4 + c] = a(r / 2, c / 2) * b(r % 2, c % 2);
        }
    }
    return GateMatrix(a.name() + "(x)" + b.name(), 4, std::move(out));
}

GateMatrix identity(std::size_t dim) {
    std::vector<Amplitude> out(dim * dim);
    for (std::size_t k = 0; k < dim; ++k) {
        out[k * dim + k] = 1;
    }
    return GateMatrix("I", dim, std::move(out));
}

GateMatrix pauli_x() {
    return GateMatrix("X", 2, {0, 1, 1, 0});
}

GateMatrix pauli_z() {
    return GateMatrix("Z", 2, {1, 0, 0, -1});
}

GateMatrix hadamard() {
    return GateMatrix("H", 2, {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2});
}

GateMatrix hwp(double theta) {
    const double c = std::cos(2 * theta);
    const double s = std::sin(2 * theta);
    return GateMatrix("HWP", 2, {c, s, s, -c});
}

GateMatrix f_gate() {
    return hwp(std::numbers::pi / 16).renamed("F");
}

GateMatrix cnot() {
    return GateMatrix("CNOT", 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}, ControlSlot::kFirst);
}

GateMatrix cz() {
    return GateMatrix("CZ", 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1}, ControlSlot::kFirst);
}

GateMatrix ch_direct() {
    // Basis order |target, control>: 00, 01, 10, 11. Hadamard mixes 01 and 11.
    const double h = kInvSqrt2;
    return GateMatrix("CH", 4,
                      {1, 0, 0, 0,  //
                       0, h, 0, h,  //
                       0, 0, 1, 0,  //
                       0, h, 0, -h},
                      ControlSlot::kSecond);
}

std::vector<GateMatrix> registered_gates() {
    return {identity(2), pauli_x(), pauli_z(), hadamard(), f_gate(), cnot(), cz(), ch_direct()};
}

bool is_unitary(const GateMatrix &gate, double tol) {
    GateMatrix p = gate.adjoint() * gate;
    for (std::size_t r = 0; r < gate.dim(); ++r) {
        for (std::size_t c = 0; c < gate.dim(); ++c) {
            Amplitude want = r == c ? 1.0 : 0.0;
            if (std::abs(p(r, c) - want) > tol) {
                return false;
            }
        }
    }
    return true;
}

double phase_aligned_distance(const GateMatrix &a, const GateMatrix &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("cannot compare gates of different dimension");
    }
    const auto &eb = b.entries();
    const auto &ea = a.entries();
    auto largest = std::max_element(eb.begin(), eb.end(),
                                    [](Amplitude x, Amplitude y) { return std::abs(x) < std::abs(y); });
    const auto k = static_cast<std::size_t>(largest - eb.begin());
    Amplitude phase = 1.0;
    if (std::abs(eb[k]) > 0 && std::abs(ea[k]) > 0) {
        Amplitude ratio = ea[k] / eb[k];
        phase = ratio / std::abs(ratio);
    }
    double worst = 0;
    for (std::size_t i = 0; i < ea.size(); ++i) {
        worst = std::max(worst, std::abs(ea[i] - phase * eb[i]));
    }
    return worst;
}

bool equivalent_up_to_phase(const GateMatrix &a, const GateMatrix &b, double tol) {
    return phase_aligned_distance(a, b) <= tol;
}

std::size_t DecomposedCircuit::two_qubit_count() const {
    return static_cast<std::size_t>(
        std::count_if(steps.begin(), steps.end(), [](const CircuitStep &s) { return s.gate.dim() == 4; }));
}

std::size_t DecomposedCircuit::single_qubit_count() const {
    return steps.size() - two_qubit_count();
}

DecomposedCircuit ch_decomposed() {
    // On the target: (F H) X (H F) = F Z F = H, while (F H)(H F) = I.
    DecomposedCircuit c;
    c.steps.push_back({f_gate(), {0}});
    c.steps.push_back({hadamard(), {0}});
    c.steps.push_back({cnot(), {1, 0}});
    c.steps.push_back({hadamard(), {0}});
    c.steps.push_back({f_gate(), {0}});
    return c;
}

GateMatrix compose(const DecomposedCircuit &circuit) {
    GateMatrix total = identity(4);
    for (const auto &step : circuit.steps) {
        total = embed(step) * total;
    }
    return total.renamed("composed");
}

}  // namespace wexpand
