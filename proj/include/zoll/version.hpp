// zollgeo: tool version constant shared by the CLI and the python module.

#ifndef ZOLL_VERSION_HPP_
#define ZOLL_VERSION_HPP_

namespace zoll {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace zoll

#endif  // ZOLL_VERSION_HPP_
