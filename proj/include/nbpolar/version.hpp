#pragma once

namespace nbpolar {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kCodeSpecFormat = "nbpolar-code-spec";
inline constexpr int kCodeSpecVersion = 1;
inline constexpr const char* kRngContract = "mt19937_64/seedseq-v1";

} // namespace nbpolar
