#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "pmwave/kernels.hpp"

namespace pmwave::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(PMWAVE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa initial_isa() {
    if (const char* env = std::getenv("PMWAVE_ISA")) {
        const std::string want(env);
        if (want == "scalar") {
            return Isa::scalar;
        }
        if (want == "avx2" && isa_available(Isa::avx2)) {
            return Isa::avx2;
        }
    }
    return detected_isa();
}

std::atomic<Isa>& active_slot() {
    static std::atomic<Isa> slot{initial_isa()};
    return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
    case Isa::scalar:
        return "scalar";
    case Isa::avx2:
        return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) {
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2:
        return cpu_has_avx2();
    }
    return false;
}

Isa detected_isa() {
    return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

Isa active_isa() {
    return active_slot().load();
}

void set_active_isa(Isa isa) {
    if (!isa_available(isa)) {
        throw std::runtime_error("kernel variant '" + std::string(isa_name(isa)) +
                                 "' is not available on this machine");
    }
    active_slot().store(isa);
}

RowUpdateFn row_update(Isa isa) {
    switch (isa) {
    case Isa::scalar:
        return &scalar::update_row;
    case Isa::avx2:
#if defined(PMWAVE_HAVE_AVX2)
        if (isa_available(Isa::avx2)) {
            return &avx2::update_row;
        }
#endif
        break;
    }
    throw std::runtime_error("kernel variant '" + std::string(isa_name(isa)) +
                             "' is not available on this machine");
}

}  // namespace pmwave::kernels
