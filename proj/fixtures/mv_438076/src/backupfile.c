/* backupfile.c -- make names for backup files */

#include <stdio.h>
#include <string.h>
#include "system.h"
#include "backupfile.h"

static char const *simple_backup_suffix = "~";

/* Return the highest existing backup number for FILE in DIR, or 0. */
static int
max_backup_version (char const *file, char const *dir)
{
  char *entries = savedir (dir);
  char *entry;
  int highest_version = 0;
  size_t file_name_length = strlen (file);

  if (entries == NULL)
    return 0;
  for (entry = entries; *entry != '\0'; entry += strlen (entry) + 1)
    {
      int this_version;
      if (strncmp (entry, file, file_name_length) == 0
          && sscanf (entry + file_name_length, ".~%d~", &this_version) == 1
          && this_version > highest_version)
        highest_version = this_version;
    }
  free (entries);
  return highest_version;
}

/* Return a newly allocated backup name for FILE. */
char *
find_backup_file_name (char const *file, int backup_type)
{
  size_t file_len = strlen (file);
  char *backup_name = malloc (file_len + 32);

  if (backup_name == NULL)
    return NULL;
  if (backup_type == 1)
    sprintf (backup_name, "%s%s", file, simple_backup_suffix);
  else
    sprintf (backup_name, "%s.~%d~", file, max_backup_version (file, ".") + 1);
  return backup_name;
}
