#pragma once

namespace coglab::cli {
int run(int argc, char** argv);
}
