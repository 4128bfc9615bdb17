// Copyright 2026 The ordhc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/* The public header must compile as C. */

#include <stdio.h>

#include "ordhc/ordhc.h"

int main(void) {
  double beta = 0.0;
  if (ordhc_beta_expected(0.0, 0.1, 0.1, &beta) != ORDHC_OK || beta != 0.0) {
    fprintf(stderr, "unexpected result: %s\n", ordhc_last_error());
    return 1;
  }
  printf("ordhc %s\n", ordhc_version());
  return 0;
}
