#ifndef QCBO_VERSION_HPP
#define QCBO_VERSION_HPP

namespace qcbo {

inline constexpr const char* kVersion = "0.1.0";

} // namespace qcbo

#endif // QCBO_VERSION_HPP
