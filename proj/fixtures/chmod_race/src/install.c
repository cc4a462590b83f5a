/* install -- copy files and set attributes */

#include <config.h>
#include <stdio.h>
#include <sys/types.h>
#include <sys/stat.h>

#include "system.h"

static mode_t mode = S_IRWXU | S_IRGRP | S_IXGRP | S_IROTH | S_IXOTH;
static char const *suffix = ".tmp";

/* Move the staged file TMP_NAME over TO. */
static bool
install_staged (char const *tmp_name, char const *to)
{
  if (rename (tmp_name, to) != 0)
    {
      error (0, errno, "cannot move %s to %s", quote (tmp_name), quote (to));
      return false;
    }
  return true;
}

/* Set the attributes of the staged copy, then move it into place. */
static bool
install_file (char const *from, char const *to)
{
  char tmp_name[PATH_MAX];
  bool ok;

  snprintf (tmp_name, sizeof tmp_name, "%s%s", to, suffix);
  ok = copy_file (from, tmp_name) && change_attributes (tmp_name, mode);
  return ok && install_staged (tmp_name, to);
}

int
main (int argc, char **argv)
{
  return install_file (argv[1], argv[2]) ? EXIT_SUCCESS : EXIT_FAILURE;
}
