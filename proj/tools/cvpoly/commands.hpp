#pragma once

#include "output.hpp"

namespace cli {

int cmd_bare(const Settings &s);
int cmd_method1(const Settings &s);
int cmd_method1_postselect(const Settings &s);
int cmd_method1_optimize(const Settings &s);
int cmd_method2(const Settings &s);
int cmd_wigner(const Settings &s);
int cmd_verify(const Settings &s);

}  // namespace cli
